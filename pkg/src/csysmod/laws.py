"""Randomised law suites for monads, modules and the C-system operations.

Every suite draws its instances from a seeded :class:`random.Random`, so a
run is reproducible from ``(samples, seed)``.  Each law reports how many
instances it evaluated and the first counterexample, if any.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass

from .csystem import Context, CSystem, Morph, Section
from .monad import (
    Assignment,
    Module,
    Monad,
    RTerm,
    collapse_s,
    include,
    renaming,
    subst_collapse,
    weaken_t,
)

__all__ = [
    "LawResult",
    "Sampler",
    "monad_laws",
    "module_laws",
    "simplicial_laws",
    "csystem_laws",
    "all_laws",
]


@dataclass
class LawResult:
    law: str
    instances: int = 0
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def line(self) -> str:
        status = "pass" if self.ok else f"FAIL counterexample: {self.counterexample}"
        return f"law {self.law}: {self.instances} instances, {status}"


class _NoInstance(Exception):
    pass


class Sampler:
    """Random terms, assignments, contexts and morphisms."""

    def __init__(self, monad: Monad, module: Module, rng: random.Random,
                 max_arity: int = 4, max_size: int = 12):
        self.monad, self.module, self.rng = monad, module, rng
        self.max_arity, self.max_size = max_arity, max_size
        self._inhabited: dict[tuple, bool] = {}

    def inhabited(self, action, n: int) -> bool:
        key = (id(action), n)
        if key not in self._inhabited:
            self._inhabited[key] = next(iter(action.elements(n, self.max_size)), None) is not None
        return self._inhabited[key]

    def arity(self, action=None, low: int = 0, high: int | None = None) -> int:
        action = action or self.monad
        high = self.max_arity if high is None else high
        choices = [n for n in range(low, high + 1) if self.inhabited(action, n)]
        if not choices:
            raise _NoInstance
        return self.rng.choice(choices)

    def term(self, n: int) -> RTerm:
        if not self.inhabited(self.monad, n):
            raise _NoInstance
        return self.monad.random_term(n, self.max_size, self.rng)

    def lmterm(self, n: int):
        if not self.inhabited(self.module, n):
            raise _NoInstance
        return self.module.random_term(n, self.max_size, self.rng)

    def assignment(self, n: int, m: int) -> Assignment:
        return Assignment(n, m, tuple(self.term(m) for _ in range(n)))

    def target_arity(self, n: int) -> int:
        """An arity ``m`` such that assignments ``n -> m`` exist."""
        if n == 0:
            return self.rng.randint(0, self.max_arity)
        return self.arity(self.monad)

    def context(self, n: int) -> Context:
        return Context(tuple(self.lmterm(i) for i in range(n)))

    def context_length(self, low: int = 0, high: int | None = None) -> int:
        high = self.max_arity if high is None else high
        ok = []
        for n in range(low, high + 1):
            if all(self.inhabited(self.module, i) for i in range(n)):
                ok.append(n)
        if not ok:
            raise _NoInstance
        return self.rng.choice(ok)

    def morph(self, dom: Context, cod: Context) -> Morph:
        return Morph(dom, cod, tuple(self.term(len(dom)) for _ in range(len(cod))))

    def section(self, ctx: Context) -> Section:
        n = len(ctx)
        return Section(ctx, self.lmterm(n), self.term(n))


def _run(name: str, samples: int, draw: Callable[[], tuple[bool, Callable[[], str]]]) -> LawResult:
    """Evaluate ``draw`` until ``samples`` instances were checked; ``draw``
    returns whether the law held and a lazy description of the instance."""
    res = LawResult(name)
    attempts = 0
    while res.instances < samples and attempts < 20 * samples:
        attempts += 1
        try:
            ok, describe = draw()
        except _NoInstance:
            continue
        res.instances += 1
        if not ok and res.counterexample is None:
            res.counterexample = describe()
    return res


def _show_term(action, t) -> str:
    return f"{action.render(t.payload)} (arity {t.arity})"


def _show_assignment(monad: Monad, f: Assignment) -> str:
    return "[" + ", ".join(monad.render(c.payload) for c in f.components) + f"] -> {f.target_arity}"


def monad_laws(monad: Monad, samples: int, rng: random.Random, max_size: int = 12) -> list[LawResult]:
    s = Sampler(monad, monad, rng, max_size=max_size)
    m_ = monad

    def law1():
        n = s.arity()
        t = s.term(n)
        out = m_.bind(m_.identity(n), t)
        return out == t, lambda: f"t = {_show_term(m_, t)}, bind(eta, t) = {_show_term(m_, out)}"

    def law2():
        n = s.arity(low=1)
        m = s.target_arity(n)
        f = s.assignment(n, m)
        i = rng.randint(1, n)
        out = m_.bind(f, m_.eta(n, i))
        return out == f[i], lambda: f"f = {_show_assignment(m_, f)}, i = {i}, got {_show_term(m_, out)}"

    def law3():
        n = s.arity()
        m = s.target_arity(n)
        k = s.target_arity(m)
        t, f, g = s.term(n), s.assignment(n, m), s.assignment(m, k)
        lhs = m_.bind(g, m_.bind(f, t))
        rhs = m_.bind(f.then(m_, g), t)
        return lhs == rhs, lambda: (
            f"t = {_show_term(m_, t)}, f = {_show_assignment(m_, f)}, g = {_show_assignment(m_, g)}: "
            f"{_show_term(m_, lhs)} != {_show_term(m_, rhs)}"
        )

    return [
        _run("monad-1", samples, law1),
        _run("monad-2", samples, law2),
        _run("monad-3", samples, law3),
    ]


def module_laws(module: Module, samples: int, rng: random.Random, max_size: int = 12) -> list[LawResult]:
    m_ = module.monad
    s = Sampler(m_, module, rng, max_size=max_size)

    def law1():
        n = s.arity(module)
        e = s.lmterm(n)
        out = module.rho(m_.identity(n), e)
        return out == e, lambda: f"e = {_show_term(module, e)}, rho(eta, e) = {_show_term(module, out)}"

    def law2():
        n = s.arity(module)
        m = s.target_arity(n)
        k = s.target_arity(m)
        e, f, g = s.lmterm(n), s.assignment(n, m), s.assignment(m, k)
        lhs = module.rho(g, module.rho(f, e))
        rhs = module.rho(f.then(m_, g), e)
        return lhs == rhs, lambda: (
            f"e = {_show_term(module, e)}, f = {_show_assignment(m_, f)}, g = {_show_assignment(m_, g)}"
        )

    return [_run("module-1", samples, law1), _run("module-2", samples, law2)]


def simplicial_laws(module: Module, samples: int, rng: random.Random, max_size: int = 12) -> list[LawResult]:
    m_ = module.monad
    s = Sampler(m_, module, rng, max_size=max_size)

    def collapse_weaken():
        m = s.arity(module, low=1)
        e = s.lmterm(m)
        k = rng.randint(1, m + 1)
        w = weaken_t(module, k, e)
        # s_k after t_k, or s_{k-1} after t_k when k = m + 1
        j = k if k <= m else k - 1
        out = collapse_s(module, j, w)
        return out == e, lambda: f"k = {k}, e = {_show_term(module, e)}, got {_show_term(module, out)}"

    def weaken_is_renaming():
        m = s.arity(module)
        e = s.lmterm(m)
        k = rng.randint(1, m + 1)
        ref = module.rho(renaming(m_, m, m + 1, lambda i: i if i < k else i + 1), e)
        return weaken_t(module, k, e) == ref, lambda: f"k = {k}, e = {_show_term(module, e)}"

    def collapse_is_renaming():
        m = s.arity(module, low=1)
        if m < 2:
            raise _NoInstance
        e = s.lmterm(m)
        k = rng.randint(1, m - 1)
        ref = module.rho(renaming(m_, m, m - 1, lambda i: i if i <= k else i - 1), e)
        return collapse_s(module, k, e) == ref, lambda: f"k = {k}, e = {_show_term(module, e)}"

    def subst_two_step():
        m = s.arity(module, low=2)
        n = rng.randint(0, m - 2)
        e = s.lmterm(m)
        st = s.term(n)
        keep = Assignment(m, m, tuple(
            m_.eta(m, i) if i != n + 1 else include(m_, st, m) for i in range(1, m + 1)
        ))
        two = collapse_s(module, n + 1, module.rho(keep, e))
        one = subst_collapse(module, n, st, e)
        return one == two, lambda: (
            f"n = {n}, s = {_show_term(m_, st)}, e = {_show_term(module, e)}: "
            f"{_show_term(module, one)} != {_show_term(module, two)}"
        )

    return [
        _run("collapse-weaken", samples, collapse_weaken),
        _run("weaken-renaming", samples, weaken_is_renaming),
        _run("collapse-renaming", samples, collapse_is_renaming),
        _run("subst-two-step", samples, subst_two_step),
    ]


def csystem_laws(cs: CSystem, samples: int, rng: random.Random, max_size: int = 6,
                 max_len: int = 3) -> list[LawResult]:
    """Pullback functoriality, the canonical square, associativity, the
    section bijection and naturality of ∂."""
    s = Sampler(cs.monad, cs.module, rng, max_arity=max_len + 1, max_size=max_size)

    def ctx(low=0, high=max_len):
        return s.context(s.context_length(low, high))

    def morph_into(cod, dom=None):
        dom = dom if dom is not None else ctx()
        if len(cod) and not s.inhabited(cs.monad, len(dom)):
            raise _NoInstance
        return s.morph(dom, cod)

    def pullback_id():
        x = ctx(1)
        obj, q = cs.pullback(cs.identity(x.ft()), x)
        return (obj, q) == (x, cs.identity(x)), lambda: cs.render_context(x)

    def pullback_compose():
        x = ctx(1)
        b = morph_into(x.ft())
        a = morph_into(b.dom)
        obj_b, q_b = cs.pullback(b, x)
        obj_ab, q_ab = cs.pullback(a, obj_b)
        obj, q = cs.pullback(cs.compose(a, b), x)
        ok = obj == obj_ab and q == cs.compose(q_ab, q_b)
        return ok, lambda: f"X = {cs.render_context(x)}"

    def square():
        x = ctx(1)
        f = morph_into(x.ft())
        obj, q = cs.pullback(f, x)
        ok = cs.compose(q, cs.canonical_p(x)) == cs.compose(cs.canonical_p(obj), f)
        return ok, lambda: f"X = {cs.render_context(x)}"

    def assoc():
        d = ctx()
        c = ctx()
        b = ctx()
        a = ctx()
        f, g, h = morph_into(c, a), morph_into(b, c), morph_into(d, b)
        ok = cs.compose(cs.compose(f, g), h) == cs.compose(f, cs.compose(g, h))
        return ok, lambda: "associativity"

    def identities():
        b = ctx()
        a = ctx()
        f = morph_into(b, a)
        ok = cs.compose(cs.identity(a), f) == f == cs.compose(f, cs.identity(b))
        return ok, lambda: "identity"

    def section_roundtrip():
        j = s.section(ctx())
        m = cs.section_to_morph(j)
        ok = cs.morph_to_section(m) == j and cs.compose(m, cs.canonical_p(j.boundary())) == cs.identity(j.ctx)
        return ok, lambda: cs.render_section(j)

    def naturality_T():
        a = ctx(1)
        n = len(a) - 1
        k = s.context_length(n, max_len)
        tail = [s.lmterm(i) for i in range(n, k)]
        jctx = a.ft().extend(*tail)
        j = s.section(jctx)
        ok = cs.op_Ttilde(a, j).boundary() == cs.op_T(a, j.boundary())
        return ok, lambda: f"A = {cs.render_context(a)}, J = {cs.render_section(j)}"

    def naturality_S():
        gamma = ctx(0, max_len - 1)
        r = s.section(gamma)
        n = len(gamma)
        k = s.context_length(n + 1, max_len)
        tail = [s.lmterm(i) for i in range(n + 1, k)]
        jctx = r.boundary().extend(*tail)
        j = s.section(jctx)
        ok = cs.op_Stilde(r, j).boundary() == cs.op_S(r, j.boundary())
        return ok, lambda: f"s = {cs.render_section(r)}, J = {cs.render_section(j)}"

    return [
        _run("pullback-identity", samples, pullback_id),
        _run("pullback-composite", samples, pullback_compose),
        _run("canonical-square", samples, square),
        _run("compose-associative", samples, assoc),
        _run("compose-identity", samples, identities),
        _run("section-roundtrip", samples, section_roundtrip),
        _run("boundary-T", samples, naturality_T),
        _run("boundary-S", samples, naturality_S),
    ]


def all_laws(monad: Monad, module: Module, samples: int, seed: int, max_size: int = 12) -> list[LawResult]:
    """Every suite that the pair supports, each with its own seeded stream."""
    results = []
    results += monad_laws(monad, samples, random.Random(f"{seed}/monad"), max_size)
    results += module_laws(module, samples, random.Random(f"{seed}/module"), max_size)
    results += simplicial_laws(module, samples, random.Random(f"{seed}/simplicial"), max_size)
    try:
        cs = CSystem(monad, module)
    except ValueError:
        return results
    has_types = next(iter(module.elements(0, max_size)), None) is not None
    if has_types:
        results += csystem_laws(cs, samples, random.Random(f"{seed}/csystem"), min(max_size, 6))
    return results
