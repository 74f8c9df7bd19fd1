"""Finitary monads on finite sets and left modules over them.

A finite set is represented by its cardinality ``n``; its elements are
``1..n``.  An element of ``R({1..n})`` is an :class:`RTerm` of arity ``n``
and an element of ``LM({1..n})`` is an :class:`LMTerm`.  Substitution data
``{1..n} -> R({1..m})`` is an :class:`Assignment`.

Concrete monads subclass :class:`Monad` and implement a handful of
payload-level primitives; arity bookkeeping and argument checking live in the
base class.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from collections.abc import Callable, Hashable, Iterator, Mapping
from dataclasses import dataclass
from typing import Any, Union

__all__ = [
    "ArityError",
    "RTerm",
    "LMTerm",
    "Assignment",
    "Monad",
    "Module",
    "SelfModule",
    "IdentityMonad",
    "PointMonad",
    "OptionMonad",
    "ProductModule",
    "TaggedUnionModule",
    "STAR",
    "builtin_monad",
    "module_product",
    "module_tagged_union",
    "renaming",
    "include",
    "weaken_t",
    "collapse_s",
    "subst_collapse",
]

STAR = "*"


class ArityError(ValueError):
    """An arity or index constraint was violated."""


@dataclass(frozen=True)
class RTerm:
    arity: int
    payload: Hashable

    def __post_init__(self):
        if self.arity < 0:
            raise ArityError(f"negative arity {self.arity}")


@dataclass(frozen=True)
class LMTerm:
    arity: int
    payload: Hashable

    def __post_init__(self):
        if self.arity < 0:
            raise ArityError(f"negative arity {self.arity}")


@dataclass(frozen=True)
class Assignment:
    """A map ``{1..source_arity} -> R({1..target_arity})``."""

    source_arity: int
    target_arity: int
    components: tuple[RTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.source_arity:
            raise ArityError(
                f"assignment has {len(self.components)} components, "
                f"expected {self.source_arity}"
            )
        for i, c in enumerate(self.components, 1):
            if not isinstance(c, RTerm):
                raise TypeError(f"component {i} is not an RTerm: {c!r}")
            if c.arity != self.target_arity:
                raise ArityError(
                    f"component {i} has arity {c.arity}, expected {self.target_arity}"
                )

    def __getitem__(self, i: int) -> RTerm:
        """1-based component lookup."""
        if not 1 <= i <= self.source_arity:
            raise ArityError(f"index {i} outside 1..{self.source_arity}")
        return self.components[i - 1]

    @classmethod
    def of(cls, target_arity: int, components) -> Assignment:
        components = tuple(components)
        return cls(len(components), target_arity, components)

    def then(self, monad: Monad, g: Assignment) -> Assignment:
        """Kleisli composite ``self ; bind(g)``, i.e. ``f o bind(g)`` in
        diagrammatic order."""
        if g.source_arity != self.target_arity:
            raise ArityError(
                f"cannot compose: target arity {self.target_arity} "
                f"!= source arity {g.source_arity}"
            )
        return Assignment(
            self.source_arity,
            g.target_arity,
            tuple(monad.bind(g, c) for c in self.components),
        )


class Monad(ABC):
    """A finitary monad on finite sets, presented by ``eta`` and ``bind``.

    Subclasses implement the payload primitives ``unit``, ``substitute``,
    ``variables`` and ``elements``.  Equality of payloads must be the intended
    equality of the monad, so payloads have to be hashable canonical values.
    """

    name: str = "monad"

    # -- payload primitives -------------------------------------------------

    @abstractmethod
    def unit(self, i: int) -> Hashable:
        """Payload of the variable ``i``."""

    @abstractmethod
    def substitute(self, payload, images: tuple) -> Hashable:
        """Replace variable ``i`` by ``images[i - 1]`` (a payload)."""

    @abstractmethod
    def variables(self, payload) -> frozenset[int]:
        ...

    @abstractmethod
    def elements(self, n: int, max_size: int) -> Iterator[Hashable]:
        """All payloads of arity ``n`` and size at most ``max_size``,
        without duplicates, in a fixed order."""

    def size(self, payload) -> int:
        return 1

    def render(self, payload) -> str:
        return str(payload)

    def parse(self, text: str, n: int) -> Hashable:
        raise NotImplementedError(f"{self.name} has no concrete syntax")

    def sample(self, n: int, max_size: int, rng: random.Random) -> Hashable:
        pool = list(self.elements(n, max_size))
        if not pool:
            raise ArityError(f"{self.name}: no element of arity {n} within size {max_size}")
        return rng.choice(pool)

    # -- arity-checked interface ---------------------------------------------

    @property
    def monad(self) -> Monad:
        return self

    def eta(self, n: int, i: int) -> RTerm:
        if not 1 <= i <= n:
            raise ArityError(f"variable {i} outside 1..{n}")
        return RTerm(n, self.unit(i))

    def bind(self, f: Assignment, t: RTerm) -> RTerm:
        if not isinstance(t, RTerm):
            raise TypeError(f"bind expects an RTerm, got {type(t).__name__}")
        if t.arity != f.source_arity:
            raise ArityError(
                f"term of arity {t.arity} under an assignment from {f.source_arity}"
            )
        images = tuple(c.payload for c in f.components)
        return RTerm(f.target_arity, self.substitute(t.payload, images))

    act = bind

    def free_vars(self, t: RTerm) -> frozenset[int]:
        return self.variables(t.payload)

    def enumerate(self, n: int, max_size: int) -> list[RTerm]:
        return [RTerm(n, p) for p in self.elements(n, max_size)]

    def random_term(self, n: int, max_size: int, rng: random.Random) -> RTerm:
        return RTerm(n, self.sample(n, max_size, rng))

    def term_size(self, t: RTerm) -> int:
        return self.size(t.payload)

    def identity(self, n: int) -> Assignment:
        return Assignment(n, n, tuple(self.eta(n, i) for i in range(1, n + 1)))

    def wrap(self, arity: int, payload) -> RTerm:
        return RTerm(arity, payload)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class Module(ABC):
    """A left module over ``monad`` with values in sets."""

    name: str = "module"

    def __init__(self, monad: Monad):
        self.monad = monad

    @abstractmethod
    def substitute(self, payload, images: tuple) -> Hashable:
        ...

    @abstractmethod
    def variables(self, payload) -> frozenset[int]:
        ...

    @abstractmethod
    def elements(self, n: int, max_size: int) -> Iterator[Hashable]:
        ...

    def size(self, payload) -> int:
        return 1

    def render(self, payload) -> str:
        return str(payload)

    def parse(self, text: str, n: int) -> Hashable:
        raise NotImplementedError(f"{self.name} has no concrete syntax")

    def sample(self, n: int, max_size: int, rng: random.Random) -> Hashable:
        pool = list(self.elements(n, max_size))
        if not pool:
            raise ArityError(f"{self.name}: no element of arity {n} within size {max_size}")
        return rng.choice(pool)

    def rho(self, f: Assignment, e: LMTerm) -> LMTerm:
        if not isinstance(e, LMTerm):
            raise TypeError(f"rho expects an LMTerm, got {type(e).__name__}")
        if e.arity != f.source_arity:
            raise ArityError(
                f"term of arity {e.arity} under an assignment from {f.source_arity}"
            )
        images = tuple(c.payload for c in f.components)
        return LMTerm(f.target_arity, self.substitute(e.payload, images))

    act = rho

    def free_vars(self, e: LMTerm) -> frozenset[int]:
        return self.variables(e.payload)

    def enumerate(self, n: int, max_size: int) -> list[LMTerm]:
        return [LMTerm(n, p) for p in self.elements(n, max_size)]

    def random_term(self, n: int, max_size: int, rng: random.Random) -> LMTerm:
        return LMTerm(n, self.sample(n, max_size, rng))

    def term_size(self, e: LMTerm) -> int:
        return self.size(e.payload)

    def wrap(self, arity: int, payload) -> LMTerm:
        return LMTerm(arity, payload)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} over {self.monad.name}>"


class SelfModule(Module):
    """``R`` regarded as a left module over itself."""

    def __init__(self, monad: Monad):
        super().__init__(monad)
        self.name = monad.name

    def substitute(self, payload, images):
        return self.monad.substitute(payload, images)

    def variables(self, payload):
        return self.monad.variables(payload)

    def elements(self, n, max_size):
        return self.monad.elements(n, max_size)

    def size(self, payload):
        return self.monad.size(payload)

    def render(self, payload):
        return self.monad.render(payload)

    def parse(self, text, n):
        return self.monad.parse(text, n)

    def sample(self, n, max_size, rng):
        return self.monad.sample(n, max_size, rng)

    def __eq__(self, other):
        return isinstance(other, SelfModule) and other.monad == self.monad

    def __hash__(self):
        return hash(("self", self.monad))


# -- builtin monads -----------------------------------------------------------


def _parse_variable(text: str, n: int) -> int:
    s = text.strip()
    if s.startswith("#"):
        s = s[1:]
    if not s.isdigit():
        raise ValueError(f"not a variable: {text!r}")
    i = int(s)
    if not 1 <= i <= n:
        raise ArityError(f"variable #{i} outside 1..{n}")
    return i


class IdentityMonad(Monad):
    """``R(X) = X``.  ``R(0)`` is empty, so ``CC(R, R)`` has only the empty
    context."""

    name = "identity"

    def unit(self, i):
        return i

    def substitute(self, payload, images):
        return images[payload - 1]

    def variables(self, payload):
        return frozenset({payload})

    def elements(self, n, max_size):
        if max_size >= 1:
            yield from range(1, n + 1)

    def render(self, payload):
        return f"#{payload}"

    def parse(self, text, n):
        return _parse_variable(text, n)

    def __eq__(self, other):
        return type(other) is IdentityMonad

    def __hash__(self):
        return hash(self.name)


class PointMonad(Monad):
    """``R(X) = pt``: every arity has exactly one element."""

    name = "point"

    def unit(self, i):
        return STAR

    def substitute(self, payload, images):
        return STAR

    def variables(self, payload):
        return frozenset()

    def elements(self, n, max_size):
        if max_size >= 1:
            yield STAR

    def parse(self, text, n):
        if text.strip() != STAR:
            raise ValueError(f"the point monad has only '*', got {text!r}")
        return STAR

    def __eq__(self, other):
        return type(other) is PointMonad

    def __hash__(self):
        return hash(self.name)


class OptionMonad(Monad):
    """``R(X) = X + {*}``."""

    name = "option"

    def unit(self, i):
        return i

    def substitute(self, payload, images):
        if payload == STAR:
            return STAR
        return images[payload - 1]

    def variables(self, payload):
        return frozenset() if payload == STAR else frozenset({payload})

    def elements(self, n, max_size):
        if max_size >= 1:
            yield from range(1, n + 1)
            yield STAR

    def render(self, payload):
        return STAR if payload == STAR else f"#{payload}"

    def parse(self, text, n):
        if text.strip() == STAR:
            return STAR
        return _parse_variable(text, n)

    def __eq__(self, other):
        return type(other) is OptionMonad

    def __hash__(self):
        return hash(self.name)


_BUILTINS: dict[str, Callable[[], Monad]] = {
    "identity": IdentityMonad,
    "point": PointMonad,
    "option": OptionMonad,
}


def builtin_monad(name: str) -> tuple[Monad, Module]:
    """Return one of the elementary monads together with its self-module."""
    try:
        monad = _BUILTINS[name]()
    except KeyError:
        raise ValueError(
            f"unknown builtin monad {name!r}; expected one of {sorted(_BUILTINS)}"
        ) from None
    return monad, SelfModule(monad)


# -- module combinators --------------------------------------------------------


def _split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


class ProductModule(Module):
    """``X -> (LM1(X), LM2(X))`` with the componentwise action."""

    def __init__(self, first: Module, second: Module):
        if first.monad != second.monad:
            raise ValueError("module_product: modules over different monads")
        super().__init__(first.monad)
        self.first, self.second = first, second
        self.name = f"({first.name} x {second.name})"

    def substitute(self, payload, images):
        a, b = payload
        return (self.first.substitute(a, images), self.second.substitute(b, images))

    def variables(self, payload):
        a, b = payload
        return self.first.variables(a) | self.second.variables(b)

    def elements(self, n, max_size):
        seconds = list(self.second.elements(n, max_size))
        for a in self.first.elements(n, max_size):
            for b in seconds:
                yield (a, b)

    def size(self, payload):
        a, b = payload
        return max(self.first.size(a), self.second.size(b))

    def render(self, payload):
        a, b = payload
        return f"<{self.first.render(a)} | {self.second.render(b)}>"

    def parse(self, text, n):
        s = text.strip()
        if not (s.startswith("<") and s.endswith(">")):
            raise ValueError(f"expected <a | b>, got {text!r}")
        parts = _split_top_level(s[1:-1], "|")
        if len(parts) != 2:
            raise ValueError(f"expected two components in {text!r}")
        return (self.first.parse(parts[0], n), self.second.parse(parts[1], n))

    def sample(self, n, max_size, rng):
        return (self.first.sample(n, max_size, rng), self.second.sample(n, max_size, rng))


class TaggedUnionModule(Module):
    """``X -> coprod_tag LM_tag(X)``; the action stays inside the tag."""

    def __init__(self, family: Mapping[str, Module]):
        if not family:
            raise ValueError("module_tagged_union: empty family")
        base = next(iter(family.values())).monad
        if any(m.monad != base for m in family.values()):
            raise ValueError("module_tagged_union: modules over different monads")
        super().__init__(base)
        self.family = dict(sorted(family.items()))
        self.name = "+".join(self.family)

    def substitute(self, payload, images):
        tag, inner = payload
        return (tag, self.family[tag].substitute(inner, images))

    def variables(self, payload):
        tag, inner = payload
        return self.family[tag].variables(inner)

    def elements(self, n, max_size):
        for tag, mod in self.family.items():
            for p in mod.elements(n, max_size):
                yield (tag, p)

    def size(self, payload):
        tag, inner = payload
        return self.family[tag].size(inner)

    def render(self, payload):
        tag, inner = payload
        return f"[{tag}] {self.family[tag].render(inner)}"

    def parse(self, text, n):
        s = text.strip()
        if not s.startswith("[") or "]" not in s:
            raise ValueError(f"expected '[tag] term', got {text!r}")
        tag, rest = s[1:].split("]", 1)
        if tag not in self.family:
            raise ValueError(f"unknown tag {tag!r}")
        return (tag, self.family[tag].parse(rest, n))

    def sample(self, n, max_size, rng):
        tags = [t for t, m in self.family.items() if any(True for _ in m.elements(n, max_size))]
        if not tags:
            raise ArityError(f"{self.name}: no element of arity {n} within size {max_size}")
        tag = rng.choice(tags)
        return (tag, self.family[tag].sample(n, max_size, rng))


def module_product(first: Module, second: Module) -> ProductModule:
    return ProductModule(first, second)


def module_tagged_union(family: Mapping[str, Module]) -> TaggedUnionModule:
    return TaggedUnionModule(family)


# -- renamings and the derived operators t_k, s_k ---------------------------------


Action = Union[Monad, Module]


def renaming(monad: Monad, n: int, m: int, mapping: Callable[[int], int]) -> Assignment:
    """The eta-assignment of a map ``{1..n} -> {1..m}``."""
    return Assignment(n, m, tuple(monad.eta(m, mapping(i)) for i in range(1, n + 1)))


def include(action: Action, e: Any, m: int):
    """Push ``e`` along the inclusion ``{1..e.arity} -> {1..m}``."""
    if e.arity > m:
        raise ArityError(f"cannot include arity {e.arity} into {m}")
    return action.act(renaming(action.monad, e.arity, m, lambda i: i), e)


def weaken_t(action: Action, k: int, e: Any):
    """``t_k``: rename along the monotone injection skipping ``k``."""
    m = e.arity
    if k < 1 or m < k - 1:
        raise ArityError(f"t_{k} undefined on arity {m}")
    return action.act(
        renaming(action.monad, m, m + 1, lambda i: i if i < k else i + 1), e
    )


def collapse_s(action: Action, k: int, e: Any):
    """``s_k``: rename along the monotone surjection merging ``k`` and ``k+1``."""
    m = e.arity
    if k < 1 or m < k + 1:
        raise ArityError(f"s_{k} undefined on arity {m}")
    return action.act(
        renaming(action.monad, m, m - 1, lambda i: i if i <= k else i - 1), e
    )


def subst_collapse(action: Action, n: int, s: RTerm, e: Any):
    """``s_{n+1}(e[s/n+1])`` computed in one step.

    Variables ``1..n`` are kept, ``n+1`` becomes ``s`` and the variables above
    move down by one.
    """
    monad = action.monad
    m = e.arity
    if s.arity != n:
        raise ArityError(f"substituted term has arity {s.arity}, expected {n}")
    if m < n + 1:
        raise ArityError(f"cannot substitute into slot {n + 1} of arity {m}")
    comps = []
    for i in range(1, m + 1):
        if i <= n:
            comps.append(monad.eta(m - 1, i))
        elif i == n + 1:
            comps.append(include(monad, s, m - 1))
        else:
            comps.append(monad.eta(m - 1, i - 1))
    return action.act(Assignment(m, m - 1, tuple(comps)), e)
