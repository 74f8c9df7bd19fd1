"""The term monad of a signature and its module of type expressions."""

from __future__ import annotations

from .enumerate import TermCounter, enumerate_terms, random_term
from .signature import Signature
from .syntax import FreeVar
from .terms import free_vars, parse_term, render_term, sort_of, substitute, term_size
from ..monad import Module, Monad, TaggedUnionModule

__all__ = ["SigMonad", "SortModule", "SigModule", "sig_monad", "sig_module"]


class _Counters:
    """Per-arity term counters, shared by the monad and its modules."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self._by_arity: dict[int, TermCounter] = {}

    def __call__(self, n: int) -> TermCounter:
        c = self._by_arity.get(n)
        if c is None:
            c = self._by_arity[n] = TermCounter(self.sig, n)
        return c


class SigMonad(Monad):
    """Arity-``n`` elements are nameless terms of the term sort whose free
    variables lie in ``1..n``; ``bind`` replaces free-variable leaves."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.name = sig.name
        self.counters = _Counters(sig)

    def unit(self, i):
        return FreeVar(i)

    def substitute(self, payload, images):
        return substitute(payload, images)

    def variables(self, payload):
        return free_vars(payload)

    def elements(self, n, max_size):
        return enumerate_terms(self.sig, self.sig.term_sort, n, max_size, self.counters(n))

    def size(self, payload):
        return term_size(payload)

    def render(self, payload):
        return render_term(payload)

    def parse(self, text, n):
        return parse_term(text, self.sig, self.sig.term_sort, n)

    def sample(self, n, max_size, rng):
        return random_term(self.sig, self.sig.term_sort, n, max_size, rng, self.counters(n))

    def __eq__(self, other):
        return isinstance(other, SigMonad) and other.sig == self.sig

    def __hash__(self):
        return hash(("sig", self.sig))


class SortModule(Module):
    """Terms of one data-sort, a left module over the term monad."""

    def __init__(self, monad: SigMonad, sort: str):
        super().__init__(monad)
        self.sort = sort
        self.name = sort

    @property
    def sig(self) -> Signature:
        return self.monad.sig

    def substitute(self, payload, images):
        return substitute(payload, images)

    def variables(self, payload):
        return free_vars(payload)

    def elements(self, n, max_size):
        return enumerate_terms(self.sig, self.sort, n, max_size, self.monad.counters(n))

    def size(self, payload):
        return term_size(payload)

    def render(self, payload):
        return render_term(payload)

    def parse(self, text, n):
        return parse_term(text, self.sig, self.sort, n)

    def sample(self, n, max_size, rng):
        return random_term(self.sig, self.sort, n, max_size, rng, self.monad.counters(n))


class SigModule(TaggedUnionModule):
    """The coproduct of the type sorts.  Payloads are ``(sort, term)``; the
    printed form is the bare term, whose sort is recovered when parsing."""

    def __init__(self, monad: SigMonad):
        sig = monad.sig
        super().__init__({s: SortModule(monad, s) for s in sig.type_sorts})
        self.sig = sig
        self.name = sig.name

    def render(self, payload):
        return render_term(payload[1])

    def parse(self, text, n):
        t = parse_term(text, self.sig, self.sig.type_sorts, n)
        return (sort_of(self.sig, t), t)

    def __eq__(self, other):
        return isinstance(other, SigModule) and other.sig == self.sig

    def __hash__(self):
        return hash(("sigmod", self.sig))


def sig_monad(sig: Signature) -> SigMonad:
    return SigMonad(sig)


def sig_module(sig: Signature, monad: SigMonad | None = None) -> SigModule:
    return SigModule(monad or SigMonad(sig))
