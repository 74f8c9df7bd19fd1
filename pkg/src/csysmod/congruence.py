"""Equality judgements, the relations ∼ and ≃, and regular congruences.

``Ceq`` holds type equalities ``Γ ⊢ S = S'`` and ``C~eq`` term equalities
``Γ ⊢ o = o' : T``.  From them

* ``Γ ∼ Γ'`` iff ``ft Γ ∼ ft Γ'`` and ``ft Γ ⊢ last Γ = last Γ'``;
* ``(Γ ⊢ o : S) ≃ (Γ' ⊢ o' : S')`` iff ``(Γ,S) ∼ (Γ',S')`` and
  ``Γ ⊢ o = o' : S``.

``∼`` lives on C.  ``≃`` lives on the judgements whose boundary ``(Γ,S)`` is
in C; near the length bound the boundary of a stored judgement may be cut
off, and such judgements are left out of ``≃`` rather than being reported as
irreflexive.  All checks use the bounded semantics of :mod:`.subsystem`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass, field

from .csystem import EMPTY, Context, CSystem, Section
from .monad import ArityError, LMTerm, RTerm, subst_collapse, weaken_t
from .subsystem import (
    EQ_RULES,
    Bounds,
    BoundsError,
    CheckReport,
    Instance,
    JudgementDB,
    RuleEngine,
    Violation,
    check_subsystem,
    fact_line,
    saturate,
)

__all__ = [
    "TypeEq",
    "TermEq",
    "EqDB",
    "EqReport",
    "PreconditionError",
    "Relation",
    "EqRuleEngine",
    "check_congruence",
    "build_sim",
    "build_simeq",
    "check_regularity",
    "Quotient",
    "quotient",
    "eqsets_from_relations",
    "close_with_equations",
    "diagonal_eqdb",
    "restrict_eqdb",
]

EqReport = CheckReport


class PreconditionError(ValueError):
    """The judgement sets do not satisfy what an operation requires."""


@dataclass(frozen=True)
class TypeEq:
    """``ctx ⊢ lhs = rhs``."""

    ctx: Context
    lhs: LMTerm
    rhs: LMTerm

    def __post_init__(self):
        n = len(self.ctx)
        if self.lhs.arity != n or self.rhs.arity != n:
            raise ArityError(f"type equality over length {n} with arities {self.lhs.arity}, {self.rhs.arity}")

    def size(self, cs: CSystem) -> int:
        return max(cs.ctx_size(self.ctx), cs.module.term_size(self.lhs), cs.module.term_size(self.rhs))

    def length(self) -> int:
        """Length of the contexts ``(ctx, lhs)`` and ``(ctx, rhs)`` it relates."""
        return len(self.ctx) + 1

    def line(self, cs: CSystem) -> str:
        head = "" if not self.ctx.entries else cs.render_context(self.ctx) + " "
        return f"typeeq: {head}|- {cs.render_type(self.lhs)} = {cs.render_type(self.rhs)}"

    def key(self, cs: CSystem):
        return (len(self.ctx), self.size(cs), self.line(cs))


@dataclass(frozen=True)
class TermEq:
    """``ctx ⊢ lhs = rhs : ty``."""

    ctx: Context
    ty: LMTerm
    lhs: RTerm
    rhs: RTerm

    def __post_init__(self):
        n = len(self.ctx)
        if {self.ty.arity, self.lhs.arity, self.rhs.arity} != {n}:
            raise ArityError(f"term equality over length {n} with mismatched arities")

    def size(self, cs: CSystem) -> int:
        return max(
            cs.ctx_size(self.ctx),
            cs.module.term_size(self.ty),
            cs.monad.term_size(self.lhs),
            cs.monad.term_size(self.rhs),
        )

    def line(self, cs: CSystem) -> str:
        head = "" if not self.ctx.entries else cs.render_context(self.ctx) + " "
        return (
            f"termeq: {head}|- {cs.render_term(self.lhs)} = {cs.render_term(self.rhs)}"
            f" : {cs.render_type(self.ty)}"
        )

    def key(self, cs: CSystem):
        return (len(self.ctx), self.size(cs), self.line(cs))

    def boundary(self) -> Context:
        return self.ctx.extend(self.ty)

    def length(self) -> int:
        """Length of the context of the judgements it relates."""
        return len(self.ctx)


@dataclass(frozen=True)
class EqDB:
    """The pair (Ceq, C~eq)."""

    type_eqs: frozenset = frozenset()
    term_eqs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "type_eqs", frozenset(self.type_eqs))
        object.__setattr__(self, "term_eqs", frozenset(self.term_eqs))
        for e in self.type_eqs:
            if not isinstance(e, TypeEq):
                raise TypeError(f"not a type equality: {e!r}")
        for e in self.term_eqs:
            if not isinstance(e, TermEq):
                raise TypeError(f"not a term equality: {e!r}")

    def __contains__(self, fact):
        return fact in self.type_eqs or fact in self.term_eqs

    def __len__(self):
        return len(self.type_eqs) + len(self.term_eqs)

    def without(self, fact) -> EqDB:
        return EqDB(self.type_eqs - {fact}, self.term_eqs - {fact})

    def facts(self, cs: CSystem) -> list:
        return [
            *sorted(self.type_eqs, key=lambda e: e.key(cs)),
            *sorted(self.term_eqs, key=lambda e: e.key(cs)),
        ]


def _sec(ctx: Context, ty: LMTerm, tm: RTerm) -> Section:
    return Section(ctx, ty, tm)


def _replace_entry(ctx: Context, k: int, new: LMTerm) -> Context:
    """``ctx`` with entry ``k + 1`` (0-based ``k``) replaced."""
    e = list(ctx.entries)
    e[k] = new
    return Context(tuple(e))


# -- the rule engine for (C, C~, Ceq, C~eq) -------------------------------------------------------


class EqRuleEngine(RuleEngine):
    """:class:`RuleEngine` extended with equality facts and conditions
    (2a) to (7b).  With ``subsystem_rules=False`` only the equality
    conditions are generated."""

    def __init__(self, cs: CSystem, subsystem_rules: bool = True):
        super().__init__(cs)
        self.subsystem_rules = subsystem_rules
        self.type_eqs: dict[TypeEq, None] = {}
        self.term_eqs: dict[TermEq, None] = {}
        self.teq_by_lhs: dict[tuple, list[TypeEq]] = defaultdict(list)
        self.teq_by_rhs: dict[tuple, list[TypeEq]] = defaultdict(list)
        self.teq_by_prefix: dict[Context, list[TypeEq]] = defaultdict(list)
        self.meq_by_lhs: dict[tuple, list[TermEq]] = defaultdict(list)
        self.meq_by_rhs: dict[tuple, list[TermEq]] = defaultdict(list)
        self.meq_by_prefix: dict[Context, list[TermEq]] = defaultdict(list)
        self.meq_by_boundary: dict[Context, list[TermEq]] = defaultdict(list)

    def __contains__(self, fact) -> bool:
        if isinstance(fact, TypeEq):
            return fact in self.type_eqs
        if isinstance(fact, TermEq):
            return fact in self.term_eqs
        return super().__contains__(fact)

    def add(self, fact) -> bool:
        if isinstance(fact, TypeEq):
            if fact in self.type_eqs:
                return False
            self.type_eqs[fact] = None
            self.teq_by_lhs[(fact.ctx, fact.lhs)].append(fact)
            self.teq_by_rhs[(fact.ctx, fact.rhs)].append(fact)
            for k in range(len(fact.ctx) + 1):
                self.teq_by_prefix[fact.ctx.prefix(k)].append(fact)
            return True
        if isinstance(fact, TermEq):
            if fact in self.term_eqs:
                return False
            self.term_eqs[fact] = None
            self.meq_by_lhs[(fact.ctx, fact.ty, fact.lhs)].append(fact)
            self.meq_by_rhs[(fact.ctx, fact.ty, fact.rhs)].append(fact)
            for k in range(len(fact.ctx) + 1):
                self.meq_by_prefix[fact.ctx.prefix(k)].append(fact)
            self.meq_by_boundary[fact.boundary()].append(fact)
            return True
        return super().add(fact)

    def eqdb(self) -> EqDB:
        return EqDB(frozenset(self.type_eqs), frozenset(self.term_eqs))

    # -- conclusions ---------------------------------------------------------------------

    def _weaken_teq(self, a: Context, e: TypeEq) -> TypeEq:
        n = len(a) - 1
        mod = self.cs.module
        return TypeEq(self.cs.op_T(a, e.ctx), weaken_t(mod, n + 1, e.lhs), weaken_t(mod, n + 1, e.rhs))

    def _weaken_meq(self, a: Context, e: TermEq) -> TermEq:
        n = len(a) - 1
        cs = self.cs
        return TermEq(
            cs.op_T(a, e.ctx),
            weaken_t(cs.module, n + 1, e.ty),
            weaken_t(cs.monad, n + 1, e.lhs),
            weaken_t(cs.monad, n + 1, e.rhs),
        )

    def _subst_teq(self, r: Section, e: TypeEq) -> TypeEq:
        n, mod = len(r.ctx), self.cs.module
        return TypeEq(
            self.cs.op_S(r, e.ctx),
            subst_collapse(mod, n, r.tm, e.lhs),
            subst_collapse(mod, n, r.tm, e.rhs),
        )

    def _subst_meq(self, r: Section, e: TermEq) -> TermEq:
        n, cs = len(r.ctx), self.cs
        return TermEq(
            cs.op_S(r, e.ctx),
            subst_collapse(cs.module, n, r.tm, e.ty),
            subst_collapse(cs.monad, n, r.tm, e.lhs),
            subst_collapse(cs.monad, n, r.tm, e.rhs),
        )

    def _cong_ctx(self, m: TermEq, x: Context) -> TypeEq:
        """(7a): ``x = (Γ1,T,Γ2,S)`` and ``Γ1 ⊢ r = r' : T``."""
        n, cs = len(m.ctx), self.cs
        b, s = x.ft(), x.last
        return TypeEq(
            cs.op_S(_sec(m.ctx, m.ty, m.lhs), b),
            subst_collapse(cs.module, n, m.lhs, s),
            subst_collapse(cs.module, n, m.rhs, s),
        )

    def _cong_sec(self, m: TermEq, j: Section) -> TermEq:
        """(7b): ``j = (Γ1,T,Γ2 ⊢ o : S)`` and ``Γ1 ⊢ r = r' : T``."""
        n, cs = len(m.ctx), self.cs
        return TermEq(
            cs.op_S(_sec(m.ctx, m.ty, m.lhs), j.ctx),
            subst_collapse(cs.module, n, m.lhs, j.ty),
            subst_collapse(cs.monad, n, m.lhs, j.tm),
            subst_collapse(cs.monad, n, m.rhs, j.tm),
        )

    # -- instances -------------------------------------------------------------------------

    def primary(self, fact):
        if isinstance(fact, (Context, Section)):
            if self.subsystem_rules:
                yield from super().primary(fact)
            if isinstance(fact, Context):
                yield from self._primary_ctx(fact)
            else:
                yield from self._primary_sec(fact)
        elif isinstance(fact, TypeEq):
            yield from self._primary_teq(fact)
        else:
            yield from self._primary_meq(fact)

    def secondary(self, fact):
        if isinstance(fact, (Context, Section)):
            if self.subsystem_rules:
                yield from super().secondary(fact)
            if isinstance(fact, Context):
                yield from self._secondary_ctx(fact)
            else:
                yield from self._secondary_sec(fact)
        elif isinstance(fact, TypeEq):
            yield from self._secondary_teq(fact)
        else:
            yield from self._secondary_meq(fact)

    def all_instances(self):
        yield from super().all_instances()
        for fact in itertools.chain(list(self.type_eqs), list(self.term_eqs)):
            yield from self.primary(fact)

    def _primary_ctx(self, x: Context):
        if not len(x):
            return
        gamma = x.ft()
        yield Instance("2b", (x,), TypeEq(gamma, x.last, x.last))
        for e in list(self.teq_by_prefix.get(gamma, ())):
            yield Instance("5a", (x, e), self._weaken_teq(x, e))
        for e in list(self.meq_by_prefix.get(gamma, ())):
            yield Instance("5b", (x, e), self._weaken_meq(x, e))

    def _secondary_ctx(self, x: Context):
        # (7a) with x = (Γ1,T,Γ2,S): the term equality lives over Γ1 with type T.
        for k in range(len(x) - 1):
            for m in list(self.meq_by_boundary.get(x.prefix(k + 1), ())):
                yield Instance("7a", (m, x), self._cong_ctx(m, x))

    def _primary_sec(self, j: Section):
        yield Instance("3b", (j,), TermEq(j.ctx, j.ty, j.tm, j.tm))
        bd = j.boundary()
        for e in list(self.teq_by_prefix.get(bd, ())):
            yield Instance("6a", (j, e), self._subst_teq(j, e))
        for e in list(self.meq_by_prefix.get(bd, ())):
            yield Instance("6b", (j, e), self._subst_meq(j, e))

    def _secondary_sec(self, j: Section):
        for k in range(len(j.ctx)):
            for m in list(self.meq_by_boundary.get(j.ctx.prefix(k + 1), ())):
                yield Instance("7b", (m, j), self._cong_sec(m, j))

    def _primary_teq(self, e: TypeEq):
        yield Instance("2a", (e,), e.ctx.extend(e.lhs))
        yield Instance("2c", (e,), TypeEq(e.ctx, e.rhs, e.lhs))
        for e2 in list(self.teq_by_lhs.get((e.ctx, e.rhs), ())):
            yield Instance("2d", (e, e2), TypeEq(e.ctx, e.lhs, e2.rhs))
        n = len(e.ctx)
        head = e.ctx.extend(e.lhs)
        for e2 in list(self.teq_by_prefix.get(head, ())):
            yield Instance("4a", (e, e2), TypeEq(_replace_entry(e2.ctx, n, e.rhs), e2.lhs, e2.rhs))
        for m in list(self.meq_by_prefix.get(head, ())):
            yield Instance("4b", (e, m), TermEq(_replace_entry(m.ctx, n, e.rhs), m.ty, m.lhs, m.rhs))
        for m in list(self.meq_by_boundary.get(head, ())):
            yield Instance("4c", (e, m), TermEq(m.ctx, e.rhs, m.lhs, m.rhs))

    def _secondary_teq(self, e: TypeEq):
        for e1 in list(self.teq_by_rhs.get((e.ctx, e.lhs), ())):
            yield Instance("2d", (e1, e), TypeEq(e.ctx, e1.lhs, e.rhs))
        for k in range(len(e.ctx)):
            for e1 in list(self.teq_by_lhs.get((e.ctx.prefix(k), e.ctx.entries[k]), ())):
                yield Instance("4a", (e1, e), TypeEq(_replace_entry(e.ctx, k, e1.rhs), e.lhs, e.rhs))
        for k in range(len(e.ctx) + 1):
            for a in list(self.ctx_children.get(e.ctx.prefix(k), ())):
                yield Instance("5a", (a, e), self._weaken_teq(a, e))
        for k in range(len(e.ctx)):
            for r in list(self.sec_by_boundary.get(e.ctx.prefix(k + 1), ())):
                yield Instance("6a", (r, e), self._subst_teq(r, e))

    def _primary_meq(self, m: TermEq):
        yield Instance("3a", (m,), Section(m.ctx, m.ty, m.lhs))
        yield Instance("3c", (m,), TermEq(m.ctx, m.ty, m.rhs, m.lhs))
        for m2 in list(self.meq_by_lhs.get((m.ctx, m.ty, m.rhs), ())):
            yield Instance("3d", (m, m2), TermEq(m.ctx, m.ty, m.lhs, m2.rhs))
        bd = m.boundary()
        n = len(m.ctx)
        for x in list(self.ctx_by_prefix.get(bd, ())):
            if len(x) >= n + 2:
                yield Instance("7a", (m, x), self._cong_ctx(m, x))
        for j in list(self.sec_by_prefix.get(bd, ())):
            yield Instance("7b", (m, j), self._cong_sec(m, j))

    def _secondary_meq(self, m: TermEq):
        for m1 in list(self.meq_by_rhs.get((m.ctx, m.ty, m.lhs), ())):
            yield Instance("3d", (m1, m), TermEq(m.ctx, m.ty, m1.lhs, m.rhs))
        for k in range(len(m.ctx)):
            for e1 in list(self.teq_by_lhs.get((m.ctx.prefix(k), m.ctx.entries[k]), ())):
                yield Instance("4b", (e1, m), TermEq(_replace_entry(m.ctx, k, e1.rhs), m.ty, m.lhs, m.rhs))
        for e1 in list(self.teq_by_lhs.get((m.ctx, m.ty), ())):
            yield Instance("4c", (e1, m), TermEq(m.ctx, e1.rhs, m.lhs, m.rhs))
        for k in range(len(m.ctx) + 1):
            for a in list(self.ctx_children.get(m.ctx.prefix(k), ())):
                yield Instance("5b", (a, m), self._weaken_meq(a, m))
        for k in range(len(m.ctx)):
            for r in list(self.sec_by_boundary.get(m.ctx.prefix(k + 1), ())):
                yield Instance("6b", (r, m), self._subst_meq(r, m))


def _engine_for(cs: CSystem, db: JudgementDB, eq: EqDB, subsystem_rules: bool) -> EqRuleEngine:
    engine = EqRuleEngine(cs, subsystem_rules)
    for fact in itertools.chain(db.contexts, db.sections, eq.type_eqs, eq.term_eqs):
        engine.add(fact)
    return engine


def _render_premises(cs: CSystem, premises) -> str:
    return " & ".join(fact_line(cs, p) for p in premises) or "-"


def _check_eq_bounds(cs: CSystem, eq: EqDB, bounds: Bounds):
    for e in itertools.chain(eq.type_eqs, eq.term_eqs):
        if not bounds.fits(cs, e):
            raise BoundsError(f"{e.line(cs)} exceeds bounds ({bounds})")


def _require_subsystem(cs: CSystem, db: JudgementDB, bounds: Bounds):
    report = check_subsystem(cs, db, bounds)
    if not report.ok:
        raise PreconditionError(
            f"the judgement sets are not closed within bounds ({len(report.violations)} violations)"
        )


def check_congruence(cs: CSystem, db: JudgementDB, eq: EqDB, bounds: Bounds) -> EqReport:
    """Check conditions (2a) to (7b) on every instance whose conclusion fits
    in ``bounds``."""
    _require_subsystem(cs, db, bounds)
    _check_eq_bounds(cs, eq, bounds)
    engine = _engine_for(cs, db, eq, subsystem_rules=False)
    found: set[Violation] = set()
    for inst in engine.all_instances():
        if inst.rule not in EQ_RULES:
            continue
        c = inst.conclusion
        if c in engine or not bounds.fits(cs, c):
            continue
        found.add(Violation(inst.rule, _render_premises(cs, inst.premises), fact_line(cs, c)))
    return CheckReport(bounds, sorted(found, key=Violation.sort_key))


# -- relations ---------------------------------------------------------------------------------------


class Relation:
    """A binary relation on a finite set together with the partition
    generated by it (union-find over a sorted edge list)."""

    def __init__(self, elements: Iterable[Hashable], pairs: Iterable[tuple], key: Callable):
        self.key = key
        self.elements = sorted(set(elements), key=key)
        self.pairs = frozenset(pairs)
        index = {x: k for k, x in enumerate(self.elements)}
        for a, b in self.pairs:
            if a not in index or b not in index:
                raise ValueError("relation pair outside the carrier set")
        parent = list(range(len(self.elements)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for ia, ib in sorted((index[a], index[b]) for a, b in self.pairs):
            ra, rb = find(ia), find(ib)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list] = defaultdict(list)
        for k, x in enumerate(self.elements):
            groups[find(k)].append(x)
        self._classes = [tuple(g) for _, g in sorted(groups.items())]
        self._class_id = {x: cid for cid, g in enumerate(self._classes) for x in g}

    def __contains__(self, x) -> bool:
        return x in self._class_id

    def related(self, a, b) -> bool:
        return (a, b) in self.pairs

    def equivalent(self, a, b) -> bool:
        return a in self._class_id and self._class_id.get(a) == self._class_id.get(b)

    def class_id(self, x) -> int:
        return self._class_id[x]

    def class_of(self, x) -> tuple:
        return self._classes[self._class_id[x]]

    def representative(self, x):
        return self.class_of(x)[0]

    def classes(self) -> list[tuple]:
        return list(self._classes)

    def is_equivalence(self) -> bool:
        return not self.equivalence_failures()

    def equivalence_failures(self) -> list[tuple]:
        """Witnesses ``("reflexive", a)``, ``("symmetric", a, b)`` or
        ``("transitive", a, b, c)``, in canonical order."""
        out: list[tuple] = []
        for a in self.elements:
            if (a, a) not in self.pairs:
                out.append(("reflexive", a))
        succ: dict = defaultdict(list)
        for a, b in self.pairs:
            succ[a].append(b)
        for a, b in sorted(self.pairs, key=lambda p: (self.key(p[0]), self.key(p[1]))):
            if (b, a) not in self.pairs:
                out.append(("symmetric", a, b))
            for c in sorted(succ[b], key=self.key):
                if (a, c) not in self.pairs:
                    out.append(("transitive", a, b, c))
        return out

    def __eq__(self, other):
        return isinstance(other, Relation) and self.pairs == other.pairs and set(self.elements) == set(other.elements)

    __hash__ = None


def build_sim(cs: CSystem, db: JudgementDB, eq: EqDB) -> Relation:
    """``∼`` on C, built length by length from the type equalities."""
    by_ctx_lhs: dict[tuple, list[TypeEq]] = defaultdict(list)
    for e in eq.type_eqs:
        by_ctx_lhs[(e.ctx, e.lhs)].append(e)
    by_len: dict[int, list[Context]] = defaultdict(list)
    for c in db.contexts:
        by_len[len(c)].append(c)
    pairs: set[tuple] = set()
    partners: dict[Context, list[Context]] = defaultdict(list)
    if EMPTY in db.contexts:
        pairs.add((EMPTY, EMPTY))
        partners[EMPTY].append(EMPTY)
    for n in range(1, max(by_len, default=0) + 1):
        for x in by_len[n]:
            gamma, t = x.ft(), x.last
            for e in by_ctx_lhs.get((gamma, t), ()):
                for gamma2 in partners.get(gamma, ()):
                    y = gamma2.extend(e.rhs)
                    if y in db.contexts:
                        pairs.add((x, y))
                        partners[x].append(y)
    return Relation(db.contexts, pairs, cs.ctx_key)


def sections_with_boundary(db: JudgementDB) -> frozenset:
    """C~∂: the judgements whose boundary lies in C."""
    return frozenset(j for j in db.sections if j.boundary() in db.contexts)


def build_simeq(cs: CSystem, db: JudgementDB, eq: EqDB, sim: Relation | None = None) -> Relation:
    """``≃`` on the judgements whose boundary is in C."""
    sim = sim or build_sim(cs, db, eq)
    carrier = sections_with_boundary(db)
    by_bd_lhs: dict[tuple, list[TermEq]] = defaultdict(list)
    for m in eq.term_eqs:
        by_bd_lhs[(m.boundary(), m.lhs)].append(m)
    succ: dict[Context, list[Context]] = defaultdict(list)
    for a, b in sim.pairs:
        succ[a].append(b)
    pairs = set()
    for j in carrier:
        bd = j.boundary()
        for m in by_bd_lhs.get((bd, j.tm), ()):
            for bd2 in succ.get(bd, ()):
                j2 = Section(bd2.ft(), bd2.last, m.rhs)
                if j2 in carrier:
                    pairs.add((j, j2))
    return Relation(carrier, pairs, cs.section_key)


def _rel_line(cs: CSystem, a, b) -> str:
    return f"{fact_line(cs, a)} ~ {fact_line(cs, b)}"


def check_regularity(
    cs: CSystem,
    db: JudgementDB,
    eq: EqDB,
    bounds: Bounds,
    sim: Relation | None = None,
    simeq: Relation | None = None,
) -> EqReport:
    """Equivalence of ``∼`` and ``≃``, σ- and σ~-compatibility, and the
    transport of equalities along ``∼``, on all in-bounds instances.

    σ-compatibility is checked for every ``i >= 1`` with ``ft^i Γ ∼ F``
    (and σ~ for every ``i >= 0``); the case ``i = 1`` (resp. ``0``) is the
    lifting of types (resp. terms) along equivalent contexts.
    """
    sim = sim or build_sim(cs, db, eq)
    simeq = simeq or build_simeq(cs, db, eq, sim)
    found: set[Violation] = set()

    def add(rule, premises, conclusion):
        found.add(Violation(rule, premises, conclusion))

    for label, rel in (("sim-equiv", sim), ("simeq-equiv", simeq)):
        for w in rel.equivalence_failures():
            kind, *xs = w
            premises = " & ".join(_rel_line(cs, a, b) for a, b in zip(xs, xs[1:])) or "-"
            if kind == "symmetric":
                target = (xs[1], xs[0])
            else:
                target = (xs[0], xs[-1])
            add(label, f"{kind}: {premises}", _rel_line(cs, *target))

    succ: dict[Context, list[Context]] = defaultdict(list)
    for a, b in sim.pairs:
        succ[a].append(b)

    for g in db.contexts:
        for i in range(1, len(g) + 1):
            base = g.prefix(len(g) - i)
            if base not in db.contexts:
                continue
            for f in succ.get(base, ()):
                if f == base:
                    continue
                target = cs.replace_prefix(g, f)
                if not bounds.fits(cs, target):
                    continue
                prem = f"{fact_line(cs, g)} & {_rel_line(cs, base, f)}"
                if target not in db.contexts:
                    add("sigma", prem, fact_line(cs, target))
                elif not sim.related(g, target):
                    add("sigma", prem, _rel_line(cs, g, target))

    for j in db.sections:
        bd = j.boundary()
        for i in range(0, len(bd) + 1):
            base = bd.prefix(len(bd) - i)
            if base not in db.contexts:
                continue
            for f in succ.get(base, ()):
                if f == base:
                    continue
                target = cs.sigma_tilde(j, f)
                if not bounds.fits(cs, target):
                    continue
                prem = f"{fact_line(cs, j)} & {_rel_line(cs, base, f)}"
                if target not in db.sections:
                    add("sigma~", prem, fact_line(cs, target))
                elif j in simeq and target in simeq and not simeq.related(j, target):
                    add("sigma~", prem, _rel_line(cs, j, target))

    for e in eq.type_eqs:
        for g2 in succ.get(e.ctx, ()):
            moved = TypeEq(g2, e.lhs, e.rhs)
            if moved not in eq.type_eqs and bounds.fits(cs, moved):
                add("transport", f"{e.line(cs)} & {_rel_line(cs, e.ctx, g2)}", moved.line(cs))
    for m in eq.term_eqs:
        for bd2 in succ.get(m.boundary(), ()):
            moved = TermEq(bd2.ft(), bd2.last, m.lhs, m.rhs)
            if moved not in eq.term_eqs and bounds.fits(cs, moved):
                add("transport~", f"{m.line(cs)} & {_rel_line(cs, m.boundary(), bd2)}", moved.line(cs))

    return CheckReport(bounds, sorted(found, key=Violation.sort_key))


# -- quotient ----------------------------------------------------------------------------------------------


@dataclass
class Quotient:
    """Classes of C and C~∂ with the induced ``ft'``, ``∂'`` and ``δ'``.

    Class ids index :attr:`ctx_classes` and :attr:`sec_classes`; each class
    lists its canonical representative first.
    """

    ctx_classes: list[tuple]
    sec_classes: list[tuple]
    ft_table: dict[int, int]
    boundary_table: dict[int, int]
    delta_table: dict[int, int]
    violations: list[Violation] = field(default_factory=list)
    instances_checked: int = 0

    def lines(self, cs: CSystem) -> list[str]:
        out = [f"context classes: {len(self.ctx_classes)}", f"judgement classes: {len(self.sec_classes)}"]
        for k, cls in enumerate(self.ctx_classes):
            out.append(f"C{k}: {fact_line(cs, cls[0])}")
            out.extend(f"  member {fact_line(cs, x)}" for x in cls)
        for k, cls in enumerate(self.sec_classes):
            out.append(f"J{k}: {fact_line(cs, cls[0])}")
            out.extend(f"  member {fact_line(cs, x)}" for x in cls)
        out.extend(f"ft' C{a} = C{b}" for a, b in sorted(self.ft_table.items()))
        out.extend(f"d' J{a} = C{b}" for a, b in sorted(self.boundary_table.items()))
        out.extend(f"delta' C{a} = J{b}" for a, b in sorted(self.delta_table.items()))
        out.append(f"operation instances checked: {self.instances_checked}")
        out.extend(v.line() for v in self.violations)
        return out


_OPERATION_OF = {"4a": "T", "4": "T~", "5a": "S", "5": "S~", "6": "delta"}


def quotient(
    cs: CSystem,
    db: JudgementDB,
    eq: EqDB,
    bounds: Bounds,
    check: bool = True,
) -> Quotient:
    """``C/∼`` and ``C~∂/≃`` with induced operations.

    Every in-bounds instance of ``T``, ``T~``, ``S``, ``S~`` and ``δ`` is
    bucketed by the classes of its inputs; a bucket whose outputs are not
    all equivalent is reported as a ``TSetc`` violation.
    """
    if check:
        _require_subsystem(cs, db, bounds)
        bad = check_congruence(cs, db, eq, bounds)
        if not bad.ok:
            raise PreconditionError(f"equality conditions fail ({len(bad.violations)} violations)")
    sim = build_sim(cs, db, eq)
    simeq = build_simeq(cs, db, eq, sim)
    if check:
        bad = check_regularity(cs, db, eq, bounds, sim, simeq)
        if not bad.ok:
            raise PreconditionError(f"regularity fails ({len(bad.violations)} violations)")

    def cid(x):
        if isinstance(x, Context):
            return ("C", sim.class_id(x)) if x in sim else ("c", x)
        return ("J", simeq.class_id(x)) if x in simeq else ("j", x)

    def in_domain(x):
        return x in sim if isinstance(x, Context) else x in simeq

    violations: set[Violation] = set()
    ft_table: dict[int, int] = {}
    boundary_table: dict[int, int] = {}
    delta_table: dict[int, int] = {}

    def record(table, label, src, dst_id, witness):
        prev = table.setdefault(src, dst_id)
        if prev != dst_id:
            violations.add(Violation("TSetc", f"{label} on class {src}", fact_line(cs, witness)))

    for x in sim.elements:
        if len(x):
            record(ft_table, "ft'", sim.class_id(x), sim.class_id(x.ft()), x)
    for j in simeq.elements:
        record(boundary_table, "d'", simeq.class_id(j), sim.class_id(j.boundary()), j)

    engine = RuleEngine(cs)
    for fact in itertools.chain(db.contexts, db.sections):
        engine.add(fact)
    buckets: dict[tuple, list] = defaultdict(list)
    checked = 0
    for inst in engine.all_instances():
        op = _OPERATION_OF.get(inst.rule)
        if op is None or not in_domain(inst.conclusion):
            continue
        checked += 1
        buckets[(op, *(cid(p) for p in inst.premises))].append(inst)
        if op == "delta":
            record(delta_table, "delta'", sim.class_id(inst.premises[0]),
                   simeq.class_id(inst.conclusion), inst.conclusion)
    for key, insts in buckets.items():
        first = insts[0]
        for other in insts[1:]:
            if cid(other.conclusion) != cid(first.conclusion):
                violations.add(Violation(
                    "TSetc",
                    f"{key[0]}: {_render_premises(cs, first.premises)} ~ {_render_premises(cs, other.premises)}",
                    _rel_line(cs, first.conclusion, other.conclusion),
                ))
    return Quotient(
        sim.classes(),
        simeq.classes(),
        ft_table,
        boundary_table,
        delta_table,
        sorted(violations, key=Violation.sort_key),
        checked,
    )


# -- from relations back to equality sets ---------------------------------------------------------------------


def _as_relation(rel, elements, key) -> Relation:
    if isinstance(rel, Relation):
        return rel
    return Relation(elements, rel, key)


def eqsets_from_relations(cs: CSystem, db: JudgementDB, sim, simeq) -> EqDB:
    """Equality sets of a pair of equivalence relations:
    ``Γ ⊢ T = T'`` when ``(Γ,T) ∼ (Γ,T')`` and ``Γ ⊢ o = o' : T`` when
    ``(Γ ⊢ o : T) ≃ (Γ ⊢ o' : T)``.  ``sim`` and ``simeq`` are
    :class:`Relation` values or sets of pairs."""
    sim = _as_relation(sim, db.contexts, cs.ctx_key)
    simeq = _as_relation(simeq, sections_with_boundary(db), cs.section_key)
    for label, rel in (("sim", sim), ("simeq", simeq)):
        failures = rel.equivalence_failures()
        if failures:
            raise PreconditionError(f"{label} is not an equivalence relation ({failures[0][0]} fails)")
    type_eqs = {
        TypeEq(a.ft(), a.last, b.last)
        for a, b in sim.pairs
        if len(a) and a.ft() == b.ft()
    }
    term_eqs = {
        TermEq(a.ctx, a.ty, a.tm, b.tm)
        for a, b in simeq.pairs
        if a.ctx == b.ctx and a.ty == b.ty
    }
    return EqDB(frozenset(type_eqs), frozenset(term_eqs))


def restrict_eqdb(db: JudgementDB, eq: EqDB) -> EqDB:
    """The part of ``eq`` that :func:`eqsets_from_relations` can express:
    type equalities with both sides in C and term equalities with both
    judgements in C~∂."""
    carrier = sections_with_boundary(db)
    return EqDB(
        frozenset(
            e for e in eq.type_eqs
            if e.ctx.extend(e.lhs) in db.contexts and e.ctx.extend(e.rhs) in db.contexts
        ),
        frozenset(
            m for m in eq.term_eqs
            if Section(m.ctx, m.ty, m.lhs) in carrier and Section(m.ctx, m.ty, m.rhs) in carrier
        ),
    )


def diagonal_eqdb(db: JudgementDB) -> EqDB:
    """``(Γ ⊢ T = T)`` for every nonempty context and ``(Γ ⊢ o = o : T)``
    for every judgement."""
    return EqDB(
        frozenset(TypeEq(c.ft(), c.last, c.last) for c in db.contexts if len(c)),
        frozenset(TermEq(j.ctx, j.ty, j.tm, j.tm) for j in db.sections),
    )


def close_with_equations(
    cs: CSystem,
    generator_contexts: Iterable[Context] = (),
    generator_sections: Iterable[Section] = (),
    generator_type_eqs: Iterable[TypeEq] = (),
    generator_term_eqs: Iterable[TermEq] = (),
    bounds: Bounds | None = None,
) -> tuple[JudgementDB, EqDB, bool]:
    """Least (C, C~, Ceq, C~eq) containing the generators and closed, within
    ``bounds``, under the subsystem rules and conditions (2a) to (7b)
    together.  Equalities feed back into C and C~ through (2a) and (3a)."""
    if bounds is None:
        raise ValueError("close_with_equations needs bounds")
    engine = EqRuleEngine(cs)
    gens = [*generator_contexts, *generator_sections, *generator_type_eqs, *generator_term_eqs]
    for g in gens:
        if not bounds.fits(cs, g):
            raise BoundsError(f"generator {fact_line(cs, g)} exceeds bounds ({bounds})")
    complete = saturate(engine, [EMPTY, *gens], bounds)
    return engine.db(), engine.eqdb(), complete
