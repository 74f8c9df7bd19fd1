"""Finite judgement sets (C, C~): closure checking, generation and membership.

A finite set can never be closed under weakening or substitution outright,
since those rules build longer contexts.  Every quantifier here therefore
ranges only over rule instances whose conclusion fits in :class:`Bounds`
(context length at most ``max_len``, every term of size at most ``max_size``).
A passing report certifies closure within those bounds and nothing more.

Rules, with ``n = l(Γ)``:

``1``   the empty context is in C
``2``   (Γ,T) in C gives Γ in C
``3``   (Γ ⊢ r : R) in C~ gives (Γ,R) in C
``4``   (Γ,T) in C and (Γ,Δ ⊢ r : R) in C~ give T~((Γ,T), J) in C~
``5``   (Γ ⊢ s : S) and (Γ,S,Δ ⊢ r : R) in C~ give S~(s, J) in C~
``6``   (Γ,T) in C gives (Γ,T ⊢ n+1 : t_{n+1}T) in C~
``4a``  (Γ,T) and (Γ,Δ) in C, Δ nonempty, give T((Γ,T),(Γ,Δ)) in C
``5a``  (Γ ⊢ s : S) in C~ and (Γ,S,Δ) in C give S(s, (Γ,S,Δ)) in C
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field

from .csystem import EMPTY, Context, CSystem, Morph, Section
from .monad import LMTerm, RTerm

__all__ = [
    "RULES",
    "Bounds",
    "BoundsError",
    "JudgementDB",
    "Violation",
    "CheckReport",
    "Instance",
    "RuleEngine",
    "Checker",
    "check_subsystem",
    "hom_membership",
    "close",
    "saturate",
    "EQ_RULES",
    "REGULARITY_RULES",
    "epsilon_db",
    "enumerate_contexts",
    "enumerate_sections",
    "fact_line",
]

RULES = ("1", "2", "3", "4", "5", "6", "4a", "5a")
EQ_RULES = (
    "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d", "4a", "4b", "4c",
    "5a", "5b", "6a", "6b", "7a", "7b",
)
REGULARITY_RULES = ("sim-equiv", "simeq-equiv", "sigma", "sigma~", "transport", "transport~")
_RULE_RANK: dict[str, int] = {}
for _r in (*RULES, *EQ_RULES, *REGULARITY_RULES):
    _RULE_RANK.setdefault(_r, len(_RULE_RANK))


class BoundsError(ValueError):
    """A value exceeds the configured bounds."""


@dataclass(frozen=True)
class Bounds:
    max_len: int
    max_size: int

    def __post_init__(self):
        if self.max_len < 1 or self.max_size < 1:
            raise ValueError("bounds must be at least 1")

    def fits_context(self, cs: CSystem, ctx: Context) -> bool:
        return len(ctx) <= self.max_len and cs.ctx_size(ctx) <= self.max_size

    def fits_section(self, cs: CSystem, s: Section) -> bool:
        return len(s.ctx) <= self.max_len and cs.section_size(s) <= self.max_size

    def fits(self, cs: CSystem, fact) -> bool:
        if isinstance(fact, Context):
            return self.fits_context(cs, fact)
        if isinstance(fact, Section):
            return self.fits_section(cs, fact)
        return fact.length() <= self.max_len and fact.size(cs) <= self.max_size

    def __str__(self):
        return f"max_len={self.max_len} max_size={self.max_size}"


@dataclass(frozen=True)
class JudgementDB:
    """The pair of sets (C, C~)."""

    contexts: frozenset = frozenset()
    sections: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "contexts", frozenset(self.contexts))
        object.__setattr__(self, "sections", frozenset(self.sections))
        for c in self.contexts:
            if not isinstance(c, Context):
                raise TypeError(f"not a context: {c!r}")
        for s in self.sections:
            if not isinstance(s, Section):
                raise TypeError(f"not a judgement: {s!r}")

    def __contains__(self, fact) -> bool:
        if isinstance(fact, Context):
            return fact in self.contexts
        return fact in self.sections

    def __len__(self):
        return len(self.contexts) + len(self.sections)

    def without(self, fact) -> JudgementDB:
        return JudgementDB(self.contexts - {fact}, self.sections - {fact})

    def union(self, other: JudgementDB) -> JudgementDB:
        return JudgementDB(self.contexts | other.contexts, self.sections | other.sections)

    def sorted_contexts(self, cs: CSystem) -> list[Context]:
        return sorted(self.contexts, key=cs.ctx_key)

    def sorted_sections(self, cs: CSystem) -> list[Section]:
        return sorted(self.sections, key=cs.section_key)

    def facts(self, cs: CSystem) -> list:
        return [*self.sorted_contexts(cs), *self.sorted_sections(cs)]

    @classmethod
    def from_predicates(
        cls,
        cs: CSystem,
        bounds: Bounds,
        ctx_pred: Callable[[Context], bool],
        sec_pred: Callable[[Section], bool],
    ) -> JudgementDB:
        """Materialise an intensional pair of membership functions by
        enumerating every context and judgement within ``bounds``."""
        ctxs = [c for c in enumerate_contexts(cs, bounds) if ctx_pred(c)]
        secs = [s for s in enumerate_sections(cs, bounds) if sec_pred(s)]
        return cls(frozenset(ctxs), frozenset(secs))


def fact_line(cs: CSystem, fact) -> str:
    """Render a context or judgement in the judgement-file line format."""
    if isinstance(fact, Context):
        return "ctx: " + cs.render_context(fact)
    if isinstance(fact, Section):
        return "typing: " + cs.render_section(fact)
    return fact.line(cs)


@dataclass(frozen=True)
class Violation:
    rule: str
    premises: str
    conclusion: str

    def line(self) -> str:
        return f"RULE {self.rule}: {self.premises} => MISSING {self.conclusion}"

    def sort_key(self):
        return (_RULE_RANK.get(self.rule, len(_RULE_RANK)), self.rule, self.premises, self.conclusion)


@dataclass
class CheckReport:
    bounds: Bounds
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def lines(self) -> list[str]:
        return [v.line() for v in self.violations]


@dataclass(frozen=True)
class Instance:
    rule: str
    premises: tuple
    conclusion: object


class RuleEngine:
    """Indexed store of judgements with rule-instance generation.

    ``primary`` yields every instance led by a fact (the first premise of the
    rule), ``secondary`` the instances in which the fact is the second
    premise.  Partners always come from the store.
    """

    def __init__(self, cs: CSystem):
        self.cs = cs
        self.contexts: dict[Context, None] = {}
        self.sections: dict[Section, None] = {}
        self.ctx_by_prefix: dict[Context, list[Context]] = defaultdict(list)
        self.ctx_children: dict[Context, list[Context]] = defaultdict(list)
        self.sec_by_prefix: dict[Context, list[Section]] = defaultdict(list)
        self.sec_by_boundary: dict[Context, list[Section]] = defaultdict(list)

    def __contains__(self, fact) -> bool:
        if isinstance(fact, Context):
            return fact in self.contexts
        return fact in self.sections

    def add(self, fact) -> bool:
        if fact in self:
            return False
        if isinstance(fact, Context):
            self.contexts[fact] = None
            for k in range(len(fact) + 1):
                self.ctx_by_prefix[fact.prefix(k)].append(fact)
            if len(fact):
                self.ctx_children[fact.ft()].append(fact)
        else:
            self.sections[fact] = None
            for k in range(len(fact.ctx) + 1):
                self.sec_by_prefix[fact.ctx.prefix(k)].append(fact)
            self.sec_by_boundary[fact.boundary()].append(fact)
        return True

    def db(self) -> JudgementDB:
        return JudgementDB(frozenset(self.contexts), frozenset(self.sections))

    # -- instances ----------------------------------------------------------------------

    def primary(self, fact) -> Iterator[Instance]:
        cs = self.cs
        if isinstance(fact, Context):
            if not len(fact):
                return
            yield Instance("2", (fact,), fact.ft())
            yield Instance("6", (fact,), cs.op_delta(fact))
            n = len(fact) - 1
            gamma = fact.ft()
            for j in list(self.sec_by_prefix.get(gamma, ())):
                yield Instance("4", (fact, j), cs.op_Ttilde(fact, j))
            for b in list(self.ctx_by_prefix.get(gamma, ())):
                if len(b) > n:
                    yield Instance("4a", (fact, b), cs.op_T(fact, b))
        else:
            bd = fact.boundary()
            yield Instance("3", (fact,), bd)
            for j in list(self.sec_by_prefix.get(bd, ())):
                yield Instance("5", (fact, j), cs.op_Stilde(fact, j))
            for b in list(self.ctx_by_prefix.get(bd, ())):
                yield Instance("5a", (fact, b), cs.op_S(fact, b))

    def secondary(self, fact) -> Iterator[Instance]:
        cs = self.cs
        if isinstance(fact, Context):
            for k in range(len(fact)):
                for a in list(self.ctx_children.get(fact.prefix(k), ())):
                    yield Instance("4a", (a, fact), cs.op_T(a, fact))
                for s in list(self.sec_by_boundary.get(fact.prefix(k + 1), ())):
                    yield Instance("5a", (s, fact), cs.op_S(s, fact))
        else:
            ctx = fact.ctx
            for k in range(len(ctx) + 1):
                for a in list(self.ctx_children.get(ctx.prefix(k), ())):
                    yield Instance("4", (a, fact), cs.op_Ttilde(a, fact))
            for k in range(len(ctx)):
                for s in list(self.sec_by_boundary.get(ctx.prefix(k + 1), ())):
                    yield Instance("5", (s, fact), cs.op_Stilde(s, fact))

    def all_instances(self) -> Iterator[Instance]:
        for fact in itertools.chain(list(self.contexts), list(self.sections)):
            yield from self.primary(fact)


def _check_within(cs: CSystem, db: JudgementDB, bounds: Bounds):
    for fact in itertools.chain(db.contexts, db.sections):
        if not bounds.fits(cs, fact):
            raise BoundsError(f"{fact_line(cs, fact)} exceeds bounds ({bounds})")


def _render_premises(cs: CSystem, premises) -> str:
    return " & ".join(fact_line(cs, p) for p in premises) or "-"


class Checker:
    """All in-bounds rule instances over ``db``, computed once.

    Removing a fact only removes the instances that use it as a premise, so
    :meth:`report_without` gives exactly the report for ``db`` minus one fact
    without re-enumerating.
    """

    def __init__(self, cs: CSystem, db: JudgementDB, bounds: Bounds):
        _check_within(cs, db, bounds)
        self.cs, self.db, self.bounds = cs, db, bounds
        engine = RuleEngine(cs)
        for fact in itertools.chain(db.contexts, db.sections):
            engine.add(fact)
        self.instances = [i for i in engine.all_instances() if bounds.fits(cs, i.conclusion)]
        self.by_conclusion: dict[object, list[Instance]] = defaultdict(list)
        self.missing: list[Instance] = []
        for inst in self.instances:
            self.by_conclusion[inst.conclusion].append(inst)
            if inst.conclusion not in db:
                self.missing.append(inst)

    def _report(self, instances: Iterable[Instance], empty_missing: bool) -> CheckReport:
        cs = self.cs
        found = {
            Violation(i.rule, _render_premises(cs, i.premises), fact_line(cs, i.conclusion))
            for i in instances
        }
        if empty_missing:
            found.add(Violation("1", "-", fact_line(cs, EMPTY)))
        return CheckReport(self.bounds, sorted(found, key=Violation.sort_key))

    def report(self) -> CheckReport:
        return self._report(self.missing, EMPTY not in self.db)

    def report_without(self, fact) -> CheckReport:
        """The report for ``db`` with ``fact`` removed."""
        lost = self.by_conclusion.get(fact, []) if fact in self.db else []
        kept = [i for i in itertools.chain(self.missing, lost) if fact not in i.premises]
        return self._report(kept, EMPTY not in self.db or fact == EMPTY)


def check_subsystem(cs: CSystem, db: JudgementDB, bounds: Bounds) -> CheckReport:
    """Check rules 1 to 6, 4a and 5a on every instance with premises in
    ``db`` and conclusion within ``bounds``."""
    return Checker(cs, db, bounds).report()


def hom_membership(cs: CSystem, db: JudgementDB, f: Morph) -> bool:
    """Whether ``f`` is a morphism of the subsystem: each component
    ``f_i : T_i(f_1/1, ..., f_{i-1}/i-1)`` is a judgement of C~."""
    if f.dom not in db.contexts or f.cod not in db.contexts:
        raise ValueError("hom_membership: domain and codomain must belong to C")
    for i in range(len(f.cod), 0, -1):
        head = Morph(f.dom, f.cod.prefix(i - 1), f.comps[: i - 1])
        ty = cs.module.rho(head.assignment(), f.cod.entries[i - 1])
        if Section(f.dom, ty, f.comps[i - 1]) not in db.sections:
            return False
    return True


def close(
    cs: CSystem,
    generator_contexts: Iterable[Context] = (),
    generator_sections: Iterable[Section] = (),
    bounds: Bounds | None = None,
) -> tuple[JudgementDB, bool]:
    """Least (C, C~) containing the generators and the empty context and
    closed under every rule whose conclusion fits in ``bounds``.

    The flag is ``False`` when some instance had its conclusion cut off by
    the bounds, i.e. the result under-approximates the unbounded closure.
    """
    if bounds is None:
        raise ValueError("close needs bounds")
    gens = JudgementDB(frozenset(generator_contexts), frozenset(generator_sections))
    _check_within(cs, gens, bounds)
    engine = RuleEngine(cs)
    complete = saturate(engine, [EMPTY, *gens.facts(cs)], bounds)
    return engine.db(), complete


def saturate(engine: RuleEngine, facts: Iterable, bounds: Bounds) -> bool:
    """Add ``facts`` and everything derivable from them within ``bounds``.

    Each new fact is stored before its instances are generated, so every
    pair of premises is met exactly when the later of the two arrives.
    Returns ``False`` if some conclusion was cut off by the bounds.
    """
    cs = engine.cs
    queue = list(facts)
    queue.reverse()
    complete = True
    while queue:
        fact = queue.pop()
        if not engine.add(fact):
            continue
        for inst in itertools.chain(engine.primary(fact), engine.secondary(fact)):
            c = inst.conclusion
            if c in engine:
                continue
            if bounds.fits(cs, c):
                queue.append(c)
            else:
                complete = False
    return complete


def _option_context(n: int) -> Context:
    """(*, 1, 2, ..., n) over the option monad."""
    from .monad import STAR

    entries = [LMTerm(0, STAR)] + [LMTerm(i, i) for i in range(1, n + 1)]
    return Context(tuple(entries))


def epsilon_db(bits) -> tuple[list[Context], list[Section]]:
    """Generators over the option monad for a 0/1 sequence: contexts
    ``(*, 1, ..., n)`` for ``n <= len(bits)`` and, wherever ``bits[n] = 1``,
    the judgement ``(*, 1, ..., n+1 ⊢ n+2 : *)``."""
    from .monad import STAR

    bits = [int(b) for b in bits]
    if any(b not in (0, 1) for b in bits):
        raise ValueError("bits must be 0 or 1")
    contexts = [_option_context(n) for n in range(len(bits) + 1)]
    sections = [
        Section(_option_context(n + 1), LMTerm(n + 2, STAR), RTerm(n + 2, n + 2))
        for n, b in enumerate(bits)
        if b
    ]
    return contexts, sections


def enumerate_contexts(cs: CSystem, bounds: Bounds) -> Iterator[Context]:
    """Every context within bounds, shortest first."""
    layer = [EMPTY]
    for n in range(bounds.max_len + 1):
        yield from layer
        if n == bounds.max_len:
            break
        types = cs.module.enumerate(n, bounds.max_size)
        layer = [c.extend(t) for c in layer for t in types]


def enumerate_sections(cs: CSystem, bounds: Bounds) -> Iterator[Section]:
    """Every judgement within bounds."""
    for ctx in enumerate_contexts(cs, bounds):
        n = len(ctx)
        terms = cs.monad.enumerate(n, bounds.max_size)
        for ty in cs.module.enumerate(n, bounds.max_size):
            for tm in terms:
                yield Section(ctx, ty, tm)
