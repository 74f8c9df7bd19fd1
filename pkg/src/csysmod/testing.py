"""Fixtures for exercising failure paths."""

from __future__ import annotations

from .monad import Monad

__all__ = ["BrokenMonad"]


def _merge(k: int, l: int) -> int:
    if k == 0:
        return l
    if l == 0:
        return k
    return 0


class BrokenMonad(Monad):
    """A pseudo-monad that satisfies the unit laws but not associativity.

    Elements of arity ``n`` are pairs ``(i, k)`` with ``i`` in ``1..n`` and a
    mark ``k`` in ``{0, 1, 2}``; substitution merges marks with an operation
    that has ``0`` as unit but is not associative.
    """

    name = "broken"

    def unit(self, i):
        return (i, 0)

    def substitute(self, payload, images):
        i, k = payload
        j, l = images[i - 1]
        return (j, _merge(k, l))

    def variables(self, payload):
        return frozenset({payload[0]})

    def elements(self, n, max_size):
        if max_size >= 1:
            for i in range(1, n + 1):
                for k in range(3):
                    yield (i, k)

    def render(self, payload):
        i, k = payload
        return f"#{i}" if k == 0 else f"#{i}^{k}"

    def __eq__(self, other):
        return type(other) is BrokenMonad

    def __hash__(self):
        return hash(self.name)
