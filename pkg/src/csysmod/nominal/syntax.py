"""Compound sorts and term nodes for nominal signatures with one name-sort.

Terms come in two flavours that share most node types:

* nameless terms (α-normal form): binders are :class:`Abs` nodes without a
  name and bound occurrences are :class:`Bound` de Bruijn indices
  (``0`` refers to the innermost enclosing binder);
* raw terms: binders are :class:`Binder` nodes carrying a name and bound
  occurrences are :class:`Name` nodes.

Context variables are :class:`FreeVar` leaves of the term sort (the ``Σ+X``
construction: each element of ``X`` is a nullary operation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "UnitSort",
    "VarSort",
    "DataSort",
    "PairSort",
    "AbsSort",
    "CompoundSort",
    "UNIT_SORT",
    "VAR_SORT",
    "tuple_sort",
    "spine",
    "render_sort",
    "data_sorts_in",
    "Op",
    "FreeVar",
    "Param",
    "Bound",
    "Abs",
    "Pair",
    "Unit",
    "UNIT",
    "Name",
    "Binder",
    "Node",
]


@dataclass(frozen=True)
class UnitSort:
    pass


@dataclass(frozen=True)
class VarSort:
    pass


@dataclass(frozen=True)
class DataSort:
    name: str


@dataclass(frozen=True)
class PairSort:
    left: "CompoundSort"
    right: "CompoundSort"


@dataclass(frozen=True)
class AbsSort:
    body: "CompoundSort"


CompoundSort = Union[UnitSort, VarSort, DataSort, PairSort, AbsSort]

UNIT_SORT = UnitSort()
VAR_SORT = VarSort()


def tuple_sort(items) -> CompoundSort:
    """``(S1, S2, ..., Sk)`` associated to the left."""
    items = list(items)
    if not items:
        return UNIT_SORT
    out = items[0]
    for s in items[1:]:
        out = PairSort(out, s)
    return out


def spine(sort: CompoundSort) -> list[CompoundSort]:
    """Components of the left spine: inverse of :func:`tuple_sort` on pairs."""
    if isinstance(sort, PairSort):
        return spine(sort.left) + [sort.right]
    return [sort]


def render_sort(sort: CompoundSort) -> str:
    if isinstance(sort, UnitSort):
        return "1"
    if isinstance(sort, VarSort):
        return "Var"
    if isinstance(sort, DataSort):
        return sort.name
    if isinstance(sort, AbsSort):
        return "Var." + render_sort(sort.body)
    return "(" + ", ".join(render_sort(s) for s in spine(sort)) + ")"


def data_sorts_in(sort: CompoundSort) -> set[str]:
    if isinstance(sort, DataSort):
        return {sort.name}
    if isinstance(sort, PairSort):
        return data_sorts_in(sort.left) | data_sorts_in(sort.right)
    if isinstance(sort, AbsSort):
        return data_sorts_in(sort.body)
    return set()


# -- term nodes ------------------------------------------------------------------


@dataclass(frozen=True)
class Op:
    name: str
    arg: "Node"


@dataclass(frozen=True)
class FreeVar:
    index: int


@dataclass(frozen=True)
class Param:
    name: str
    sort: str


@dataclass(frozen=True)
class Bound:
    index: int


@dataclass(frozen=True)
class Abs:
    body: "Node"


@dataclass(frozen=True)
class Pair:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Unit:
    pass


UNIT = Unit()


@dataclass(frozen=True)
class Name:
    """A named atom occurrence (raw terms only)."""

    name: str


@dataclass(frozen=True)
class Binder:
    """A named abstraction (raw terms only)."""

    name: str
    body: "Node"


Node = Union[Op, FreeVar, Param, Bound, Abs, Pair, Unit, Name, Binder]
