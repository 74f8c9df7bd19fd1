"""Exhaustive enumeration and uniform sampling of nameless terms.

Terms are counted by size and then unranked, so enumeration is complete and
duplicate-free and sampling never materialises the whole pool.  Within one
size the order is: free variables, parameters (by name), then operations by
name with their arguments in pair order (left size, left rank, right rank).
"""

from __future__ import annotations

import random
from functools import lru_cache

from .signature import Signature
from .syntax import (
    UNIT,
    Abs,
    AbsSort,
    Bound,
    CompoundSort,
    DataSort,
    FreeVar,
    Node,
    Op,
    Pair,
    PairSort,
    Param,
    UnitSort,
    VarSort,
)

__all__ = ["TermCounter", "enumerate_terms", "random_term"]


class TermCounter:
    """Counts and unranks terms of arity ``n`` over ``sig``."""

    def __init__(self, sig: Signature, n: int):
        self.sig, self.n = sig, n
        self.count = lru_cache(maxsize=None)(self._count)

    def _leaves(self, sort: str) -> list[Node]:
        out: list[Node] = []
        if sort == self.sig.term_sort:
            out.extend(FreeVar(i) for i in range(1, self.n + 1))
        out.extend(Param(p, sort) for p in sorted(self.sig.params_of(sort)))
        return out

    def _count(self, sort: CompoundSort, depth: int, size: int) -> int:
        if size < 0:
            return 0
        if isinstance(sort, UnitSort):
            return 1 if size == 0 else 0
        if isinstance(sort, VarSort):
            return depth if size == 1 else 0
        if isinstance(sort, AbsSort):
            return self.count(sort.body, depth + 1, size)
        if isinstance(sort, PairSort):
            return sum(
                self.count(sort.left, depth, k) * self.count(sort.right, depth, size - k)
                for k in range(size + 1)
            )
        total = len(self._leaves(sort.name)) if size == 1 else 0
        if size >= 1:
            for op in self.sig.ops_into(sort.name):
                total += self.count(op.arg_sort, depth, size - 1)
        return total

    def unrank(self, sort: CompoundSort, depth: int, size: int, index: int) -> Node:
        if not 0 <= index < self.count(sort, depth, size):
            raise IndexError(f"rank {index} out of range")
        if isinstance(sort, UnitSort):
            return UNIT
        if isinstance(sort, VarSort):
            return Bound(index)
        if isinstance(sort, AbsSort):
            return Abs(self.unrank(sort.body, depth + 1, size, index))
        if isinstance(sort, PairSort):
            for k in range(size + 1):
                cl = self.count(sort.left, depth, k)
                cr = self.count(sort.right, depth, size - k)
                if index < cl * cr:
                    return Pair(
                        self.unrank(sort.left, depth, k, index // cr),
                        self.unrank(sort.right, depth, size - k, index % cr),
                    )
                index -= cl * cr
        assert isinstance(sort, DataSort)
        if size == 1:
            leaves = self._leaves(sort.name)
            if index < len(leaves):
                return leaves[index]
            index -= len(leaves)
        for op in self.sig.ops_into(sort.name):
            c = self.count(op.arg_sort, depth, size - 1)
            if index < c:
                return Op(op.name, self.unrank(op.arg_sort, depth, size - 1, index))
            index -= c
        raise AssertionError("unreachable: rank within count")


def enumerate_terms(sig: Signature, sort: str, n: int, max_size: int, counter: TermCounter | None = None):
    """Yield every term of data-sort ``sort``, arity ``n`` and size at most
    ``max_size``, ordered by size."""
    counter = counter or TermCounter(sig, n)
    ds = DataSort(sort)
    for size in range(1, max_size + 1):
        for k in range(counter.count(ds, 0, size)):
            yield counter.unrank(ds, 0, size, k)


def random_term(sig: Signature, sort: str, n: int, max_size: int, rng: random.Random,
                counter: TermCounter | None = None) -> Node:
    """A size drawn uniformly among the inhabited sizes, then a uniform term
    of that size."""
    counter = counter or TermCounter(sig, n)
    ds = DataSort(sort)
    sizes = [s for s in range(1, max_size + 1) if counter.count(ds, 0, s)]
    if not sizes:
        raise ValueError(f"no term of sort {sort} and arity {n} within size {max_size}")
    size = rng.choice(sizes)
    return counter.unrank(ds, 0, size, rng.randrange(counter.count(ds, 0, size)))
