"""The C-system CC(R, LM) of a monad R and a left R-module LM.

Objects are contexts ``(T_1, ..., T_n)`` with ``T_i`` in ``LM({1..i-1})``.
A morphism ``Γ' -> Γ`` is a tuple of ``l(Γ)`` elements of ``R({1..l(Γ')})``
and composes by Kleisli substitution.  Elements of Ob~ are encoded as
judgements ``(Γ ⊢ t : T)``, i.e. :class:`Section` values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .monad import (
    ArityError,
    Assignment,
    LMTerm,
    Module,
    Monad,
    RTerm,
    include,
    subst_collapse,
    weaken_t,
)

__all__ = [
    "CSystemError",
    "Context",
    "Morph",
    "Section",
    "CSystem",
    "EMPTY",
]


class CSystemError(ValueError):
    """A precondition of a C-system operation was violated."""


@dataclass(frozen=True)
class Context:
    entries: tuple[LMTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for i, e in enumerate(self.entries):
            if not isinstance(e, LMTerm):
                raise TypeError(f"context entry {i + 1} is not an LMTerm: {e!r}")
            if e.arity != i:
                raise ArityError(f"context entry {i + 1} has arity {e.arity}, expected {i}")

    @property
    def length(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def ft(self) -> Context:
        return Context(self.entries[:-1])

    def prefix(self, k: int) -> Context:
        if not 0 <= k <= len(self):
            raise CSystemError(f"no prefix of length {k} in a context of length {len(self)}")
        return Context(self.entries[:k])

    def extend(self, *types: LMTerm) -> Context:
        return Context(self.entries + types)

    @property
    def last(self) -> LMTerm:
        if not self.entries:
            raise CSystemError("the empty context has no last entry")
        return self.entries[-1]

    def has_prefix(self, other: Context) -> bool:
        return self.entries[: len(other)] == other.entries


EMPTY = Context()


@dataclass(frozen=True)
class Morph:
    dom: Context
    cod: Context
    comps: tuple[RTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(self.comps))
        if len(self.comps) != len(self.cod):
            raise ArityError(f"morphism has {len(self.comps)} components, codomain length {len(self.cod)}")
        for i, c in enumerate(self.comps, 1):
            if c.arity != len(self.dom):
                raise ArityError(f"component {i} has arity {c.arity}, domain length {len(self.dom)}")

    def assignment(self) -> Assignment:
        return Assignment(len(self.cod), len(self.dom), self.comps)


@dataclass(frozen=True)
class Section:
    """The judgement ``ctx ⊢ tm : ty``."""

    ctx: Context
    ty: LMTerm
    tm: RTerm

    def __post_init__(self):
        n = len(self.ctx)
        if self.ty.arity != n or self.tm.arity != n:
            raise ArityError(
                f"judgement over a context of length {n} has type arity {self.ty.arity} "
                f"and term arity {self.tm.arity}"
            )

    def boundary(self) -> Context:
        """∂(Γ ⊢ t : T) = (Γ, T)."""
        return self.ctx.extend(self.ty)

    def __len__(self):
        return len(self.ctx)


class CSystem:
    """Operations of CC(monad, module)."""

    def __init__(self, monad: Monad, module: Module):
        if module.monad != monad:
            raise ValueError("the module is not over the given monad")
        self.monad, self.module = monad, module

    # -- category structure ------------------------------------------------------

    @staticmethod
    def ft(ctx: Context) -> Context:
        return ctx.ft()

    def identity(self, ctx: Context) -> Morph:
        n = len(ctx)
        return Morph(ctx, ctx, tuple(self.monad.eta(n, i) for i in range(1, n + 1)))

    def compose(self, f: Morph, g: Morph) -> Morph:
        """``f`` then ``g``."""
        if f.cod != g.dom:
            raise CSystemError("cannot compose: codomain and domain differ")
        fa = f.assignment()
        return Morph(f.dom, g.cod, tuple(self.monad.bind(fa, c) for c in g.comps))

    def canonical_p(self, ctx: Context) -> Morph:
        n = len(ctx)
        if n == 0:
            raise CSystemError("the empty context has no canonical projection")
        return Morph(ctx, ctx.ft(), tuple(self.monad.eta(n, i) for i in range(1, n)))

    def pullback(self, f: Morph, x: Context) -> tuple[Context, Morph]:
        """The chosen square over ``p_X`` along ``f : Γ' -> ft(X)``."""
        if len(x) == 0:
            raise CSystemError("cannot pull back the empty context")
        if f.cod != x.ft():
            raise CSystemError("pullback: codomain of f is not ft(X)")
        m = len(f.dom)
        obj = f.dom.extend(self.module.rho(f.assignment(), x.last))
        comps = tuple(include(self.monad, c, m + 1) for c in f.comps)
        q = Morph(obj, x, comps + (self.monad.eta(m + 1, m + 1),))
        return obj, q

    # -- sections -------------------------------------------------------------------

    def section_to_morph(self, s: Section) -> Morph:
        n = len(s.ctx)
        etas = tuple(self.monad.eta(n, i) for i in range(1, n + 1))
        return Morph(s.ctx, s.boundary(), etas + (s.tm,))

    def morph_to_section(self, m: Morph) -> Section:
        if len(m.cod) == 0:
            raise CSystemError("a section needs a nonempty codomain")
        if m.dom != m.cod.ft():
            raise CSystemError("not a section: domain is not ft of the codomain")
        n = len(m.dom)
        for i in range(1, n + 1):
            if m.comps[i - 1] != self.monad.eta(n, i):
                raise CSystemError(
                    f"not a section: component {i} is {self.render_term(m.comps[i - 1])}, "
                    f"expected the variable {i}"
                )
        return Section(m.dom, m.cod.last, m.comps[-1])

    # -- the five operations ------------------------------------------------------------

    def op_T(self, a: Context, b: Context) -> Context:
        """(Γ,T) and (Γ,Δ) give (Γ, T, t_{n+1}Δ)."""
        if len(a) == 0:
            raise CSystemError("T: the first context is empty")
        n = len(a) - 1
        if len(b) < n or not b.has_prefix(a.ft()):
            raise CSystemError("T: the second context does not extend ft of the first")
        return a.extend(*(weaken_t(self.module, n + 1, e) for e in b.entries[n:]))

    def op_Ttilde(self, a: Context, j: Section) -> Section:
        n = len(a) - 1
        ctx = self.op_T(a, j.ctx)
        return Section(ctx, weaken_t(self.module, n + 1, j.ty), weaken_t(self.monad, n + 1, j.tm))

    def _check_cut(self, s: Section, b: Context, what: str):
        n = len(s.ctx)
        if len(b) < n + 1 or not b.has_prefix(s.ctx) or b.entries[n] != s.ty:
            raise CSystemError(f"{what}: the context does not continue with the type of the cut term")

    def op_S(self, s: Section, b: Context) -> Context:
        """(Γ ⊢ s : S) and (Γ,S,Δ) give (Γ, s_{n+1}(Δ[s/n+1]))."""
        self._check_cut(s, b, "S")
        n = len(s.ctx)
        return s.ctx.extend(*(subst_collapse(self.module, n, s.tm, e) for e in b.entries[n + 1:]))

    def op_Stilde(self, s: Section, j: Section) -> Section:
        self._check_cut(s, j.ctx, "S~")
        n = len(s.ctx)
        return Section(
            self.op_S(s, j.ctx),
            subst_collapse(self.module, n, s.tm, j.ty),
            subst_collapse(self.monad, n, s.tm, j.tm),
        )

    def op_delta(self, a: Context) -> Section:
        """(Γ,T) gives (Γ, T ⊢ n+1 : t_{n+1}T)."""
        if len(a) == 0:
            raise CSystemError("delta: empty context")
        n = len(a) - 1
        return Section(a, weaken_t(self.module, n + 1, a.last), self.monad.eta(n + 1, n + 1))

    # -- σ and σ~ -----------------------------------------------------------------------------

    @staticmethod
    def replace_prefix(ctx: Context, new: Context) -> Context:
        if len(new) > len(ctx):
            raise CSystemError("the replacement prefix is longer than the context")
        return Context(new.entries + ctx.entries[len(new):])

    def sigma(self, ctx: Context, new: Context) -> Context:
        if len(ctx) <= len(new):
            raise CSystemError(f"sigma needs l(Γ) > l(Γ'), got {len(ctx)} and {len(new)}")
        return self.replace_prefix(ctx, new)

    def sigma_tilde(self, j: Section, new: Context) -> Section:
        i = len(j.ctx) + 1 - len(new)
        if i < 0:
            raise CSystemError("sigma~ needs l(Γ') <= l(∂J)")
        if i == 0:
            return Section(new.ft(), new.last, j.tm)
        return Section(self.replace_prefix(j.ctx, new), j.ty, j.tm)

    # -- sizes, ordering, printing and reading ------------------------------------------------

    def ctx_size(self, ctx: Context) -> int:
        return max((self.module.term_size(e) for e in ctx.entries), default=0)

    def section_size(self, s: Section) -> int:
        return max(self.ctx_size(s.ctx), self.module.term_size(s.ty), self.monad.term_size(s.tm))

    def render_term(self, t: RTerm) -> str:
        return self.monad.render(t.payload)

    def render_type(self, e: LMTerm) -> str:
        return self.module.render(e.payload)

    def render_context(self, ctx: Context) -> str:
        if not ctx.entries:
            return "<empty>"
        return " ; ".join(self.render_type(e) for e in ctx.entries)

    def render_section(self, s: Section) -> str:
        head = "" if not s.ctx.entries else self.render_context(s.ctx) + " "
        return f"{head}|- {self.render_term(s.tm)} : {self.render_type(s.ty)}"

    def ctx_key(self, ctx: Context):
        return (len(ctx), self.ctx_size(ctx), self.render_context(ctx))

    def section_key(self, s: Section):
        return (len(s.ctx), self.section_size(s), self.render_section(s))

    def parse_context(self, text: str) -> Context:
        text = text.strip()
        if text in ("", "<empty>"):
            return EMPTY
        parts = [p.strip() for p in text.split(";")]
        return Context(tuple(LMTerm(i, self.module.parse(p, i)) for i, p in enumerate(parts)))

    def parse_type(self, text: str, n: int) -> LMTerm:
        return LMTerm(n, self.module.parse(text, n))

    def parse_rterm(self, text: str, n: int) -> RTerm:
        return RTerm(n, self.monad.parse(text, n))
