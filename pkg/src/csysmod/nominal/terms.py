"""Reading, printing, α-normalising and checking terms over a signature."""

from __future__ import annotations

import re
from collections.abc import Iterable

from .signature import Signature
from .syntax import (
    UNIT,
    Abs,
    AbsSort,
    Binder,
    Bound,
    CompoundSort,
    DataSort,
    FreeVar,
    Name,
    Node,
    Op,
    Pair,
    PairSort,
    Param,
    Unit,
    UnitSort,
    VarSort,
    spine,
)

__all__ = [
    "TermError",
    "UnboundNameError",
    "alpha_normalize",
    "parse_raw",
    "parse_term",
    "render_term",
    "validate_term",
    "sort_of",
    "term_size",
    "free_vars",
    "substitute",
    "is_nameless",
]


class TermError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        super().__init__(message if column is None else f"column {column}: {message}")


class UnboundNameError(TermError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"name {name!r} is not bound by an enclosing abstraction")


# -- structural helpers ---------------------------------------------------------------


def term_size(t: Node) -> int:
    """Number of operation, variable, parameter and name leaves."""
    if isinstance(t, Op):
        return 1 + term_size(t.arg)
    if isinstance(t, (FreeVar, Param, Bound, Name)):
        return 1
    if isinstance(t, (Abs, Binder)):
        return term_size(t.body)
    if isinstance(t, Pair):
        return term_size(t.left) + term_size(t.right)
    return 0


def free_vars(t: Node) -> frozenset[int]:
    out: set[int] = set()
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, FreeVar):
            out.add(x.index)
        elif isinstance(x, Op):
            stack.append(x.arg)
        elif isinstance(x, (Abs, Binder)):
            stack.append(x.body)
        elif isinstance(x, Pair):
            stack.extend((x.left, x.right))
    return frozenset(out)


def substitute(t: Node, images: tuple) -> Node:
    """Replace each ``FreeVar(i)`` by ``images[i - 1]``.

    Images are nameless terms without dangling :class:`Bound` indices, so they
    can be placed under binders as they are.
    """
    if isinstance(t, FreeVar):
        return images[t.index - 1]
    if isinstance(t, Op):
        return Op(t.name, substitute(t.arg, images))
    if isinstance(t, Abs):
        return Abs(substitute(t.body, images))
    if isinstance(t, Pair):
        return Pair(substitute(t.left, images), substitute(t.right, images))
    if isinstance(t, Binder):
        return Binder(t.name, substitute(t.body, images))
    return t


def is_nameless(t: Node) -> bool:
    if isinstance(t, (Name, Binder)):
        return False
    if isinstance(t, Op):
        return is_nameless(t.arg)
    if isinstance(t, Abs):
        return is_nameless(t.body)
    if isinstance(t, Pair):
        return is_nameless(t.left) and is_nameless(t.right)
    return True


def sort_of(sig: Signature, t: Node) -> str:
    """Data-sort of a term-level node."""
    if isinstance(t, FreeVar):
        return sig.term_sort
    if isinstance(t, Param):
        return t.sort
    if isinstance(t, Op):
        return sig.op(t.name).result_sort
    raise TermError(f"{type(t).__name__} node is not a term")


# -- α-normalisation -------------------------------------------------------------------


def alpha_normalize(t: Node, env: tuple = ()) -> Node:
    """Canonical nameless form of a raw term.

    Named binders become :class:`Abs` and each :class:`Name` becomes the de
    Bruijn index of the innermost binder of that name.  Already-nameless
    parts pass through, so the function is idempotent.
    """
    if isinstance(t, Name):
        for k in range(len(env) - 1, -1, -1):
            if env[k] == t.name:
                return Bound(len(env) - 1 - k)
        raise UnboundNameError(t.name)
    if isinstance(t, Binder):
        return Abs(alpha_normalize(t.body, env + (t.name,)))
    if isinstance(t, Abs):
        return Abs(alpha_normalize(t.body, env + (None,)))
    if isinstance(t, Bound):
        if t.index >= len(env):
            raise TermError(f"dangling bound index {t.index}")
        return t
    if isinstance(t, Op):
        return Op(t.name, alpha_normalize(t.arg, env))
    if isinstance(t, Pair):
        return Pair(alpha_normalize(t.left, env), alpha_normalize(t.right, env))
    return t


# -- validation ----------------------------------------------------------------------------


def validate_term(sig: Signature, t: Node, sort: str, arity: int) -> None:
    """Raise :class:`TermError` unless ``t`` is a nameless, sort-correct term of
    data-sort ``sort`` with free variables in ``1..arity`` and no dangling
    bound indices."""
    _check_data(sig, t, {sort}, arity, 0)


def _check_data(sig, t, sorts, arity, depth):
    if isinstance(t, FreeVar):
        if sig.term_sort not in sorts:
            raise TermError(f"variable #{t.index} has sort {sig.term_sort}, expected {_fmt(sorts)}")
        if not 1 <= t.index <= arity:
            raise TermError(f"variable #{t.index} outside 1..{arity}")
    elif isinstance(t, Param):
        if t.sort not in sorts:
            raise TermError(f"parameter {t.name} has sort {t.sort}, expected {_fmt(sorts)}")
        if t.name not in sig.params_of(t.sort):
            raise TermError(f"unknown parameter {t.name!r} of sort {t.sort}")
    elif isinstance(t, Op):
        try:
            decl = sig.op(t.name)
        except KeyError as exc:
            raise TermError(str(exc)) from None
        if decl.result_sort not in sorts:
            raise TermError(f"{t.name} has sort {decl.result_sort}, expected {_fmt(sorts)}")
        _check_arg(sig, t.arg, decl.arg_sort, arity, depth)
    else:
        raise TermError(f"{type(t).__name__} node in a data position")


def _check_arg(sig, t, sort: CompoundSort, arity, depth):
    if isinstance(sort, UnitSort):
        if not isinstance(t, Unit):
            raise TermError(f"expected (), found {type(t).__name__}")
    elif isinstance(sort, VarSort):
        if not isinstance(t, Bound):
            raise TermError(f"expected a bound name, found {type(t).__name__}")
        if not 0 <= t.index < depth:
            raise TermError(f"dangling bound index {t.index} at depth {depth}")
    elif isinstance(sort, DataSort):
        _check_data(sig, t, {sort.name}, arity, depth)
    elif isinstance(sort, AbsSort):
        if not isinstance(t, Abs):
            raise TermError(f"expected an abstraction, found {type(t).__name__}")
        _check_arg(sig, t.body, sort.body, arity, depth + 1)
    elif isinstance(sort, PairSort):
        if not isinstance(t, Pair):
            raise TermError(f"expected a pair, found {type(t).__name__}")
        _check_arg(sig, t.left, sort.left, arity, depth)
        _check_arg(sig, t.right, sort.right, arity, depth)


def _fmt(sorts):
    return "/".join(sorted(sorts))


# -- printing ---------------------------------------------------------------------------------


def _pair_spine(t: Node) -> list[Node]:
    if isinstance(t, Pair):
        return _pair_spine(t.left) + [t.right]
    return [t]


def render_term(t: Node, depth: int = 0) -> str:
    """Print a term; binders are named ``x1, x2, ...`` by nesting depth."""
    if isinstance(t, FreeVar):
        return f"#{t.index}"
    if isinstance(t, Param):
        return t.name
    if isinstance(t, Op):
        if isinstance(t.arg, Unit):
            return t.name
        return t.name + "(" + ", ".join(render_term(a, depth) for a in _pair_spine(t.arg)) + ")"
    if isinstance(t, Bound):
        return f"x{depth - t.index}"
    if isinstance(t, Abs):
        return f"x{depth + 1}. " + render_term(t.body, depth + 1)
    if isinstance(t, Pair):
        return "(" + ", ".join(render_term(a, depth) for a in _pair_spine(t)) + ")"
    if isinstance(t, Unit):
        return "()"
    if isinstance(t, Name):
        return t.name
    if isinstance(t, Binder):
        return f"{t.name}. " + render_term(t.body, depth + 1)
    raise TypeError(f"not a term node: {t!r}")


# -- parsing -------------------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<var>#\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[(),.]))"
)


class _TermParser:
    def __init__(self, text: str, sig: Signature, arity: int | None):
        self.text, self.sig, self.arity = text, sig, arity
        self.pos = 0

    def error(self, msg):
        raise TermError(msg, self.pos + 1)

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None
        return m.group(m.lastgroup)

    def take(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            rest = self.text[self.pos:].strip()
            self.error(f"unexpected {rest[:1]!r}" if rest else "unexpected end of input")
        self.pos = m.end()
        return m.lastgroup, m.group(m.lastgroup)

    def expect(self, tok):
        start = self.pos
        kind, val = self.take()
        if val != tok:
            self.pos = start
            self.error(f"expected {tok!r}, found {val!r}")

    def done(self):
        if self.text[self.pos:].strip():
            self.error(f"trailing input {self.text[self.pos:].strip()!r}")

    def data(self, sorts: set[str]) -> Node:
        start = self.pos
        kind, val = self.take()
        sig = self.sig
        if kind == "var":
            k = int(val[1:])
            if sig.term_sort not in sorts:
                self.pos = start
                self.error(f"variable {val} has sort {sig.term_sort}, expected {_fmt(sorts)}")
            if self.arity is not None and not 1 <= k <= self.arity:
                self.pos = start
                self.error(f"variable {val} outside 1..{self.arity}")
            return FreeVar(k)
        if kind != "ident":
            self.pos = start
            self.error(f"expected a term, found {val!r}")
        decl = sig.op_table.get(val)
        if self.peek() == "(":
            if decl is None:
                self.pos = start
                self.error(f"unknown operation {val!r}")
            self._check_sort(decl.result_sort, sorts, val, start)
            self.take()
            if isinstance(decl.arg_sort, UnitSort) and self.peek() == ")":
                self.take()
                return Op(val, UNIT)
            comps = spine(decl.arg_sort)
            args = self.arguments(comps)
            self.expect(")")
            return Op(val, _left_tuple(args))
        if decl is not None:
            if not isinstance(decl.arg_sort, UnitSort):
                self.pos = start
                self.error(f"operation {val!r} needs arguments")
            self._check_sort(decl.result_sort, sorts, val, start)
            return Op(val, UNIT)
        owners = [s for s in sorted(sorts) if val in sig.params_of(s)]
        if len(owners) == 1:
            return Param(val, owners[0])
        if not owners:
            elsewhere = [s for s, names in sig.params if val in names]
            self.pos = start
            if elsewhere:
                self.error(f"parameter {val!r} has sort {elsewhere[0]}, expected {_fmt(sorts)}")
            self.error(f"unknown identifier {val!r}")
        self.pos = start
        self.error(f"ambiguous parameter {val!r}")

    def _check_sort(self, got, sorts, name, start):
        if got not in sorts:
            self.pos = start
            self.error(f"{name} has sort {got}, expected {_fmt(sorts)}")

    def arguments(self, comps: list[CompoundSort]) -> list[Node]:
        out = []
        for k, s in enumerate(comps):
            if k:
                start = self.pos
                _, v = self.take()
                if v != ",":
                    self.pos = start
                    self.error(f"expected {len(comps)} arguments")
            out.append(self.arg(s))
        return out

    def arg(self, sort: CompoundSort) -> Node:
        if isinstance(sort, DataSort):
            return self.data({sort.name})
        if isinstance(sort, UnitSort):
            self.expect("(")
            self.expect(")")
            return UNIT
        if isinstance(sort, VarSort):
            start = self.pos
            kind, val = self.take()
            if kind != "ident":
                self.pos = start
                self.error(f"expected a name, found {val!r}")
            return Name(val)
        if isinstance(sort, AbsSort):
            start = self.pos
            kind, val = self.take()
            if kind != "ident":
                self.pos = start
                self.error(f"expected a binder 'name.', found {val!r}")
            self.expect(".")
            return Binder(val, self.arg(sort.body))
        self.expect("(")
        args = self.arguments(spine(sort))
        self.expect(")")
        return _left_tuple(args)


def _left_tuple(items: list[Node]) -> Node:
    out = items[0]
    for x in items[1:]:
        out = Pair(out, x)
    return out


def parse_raw(text: str, sig: Signature, sorts: str | Iterable[str], arity: int | None = None) -> Node:
    """Parse ``text`` into a raw (named) term of one of ``sorts``."""
    sorts = {sorts} if isinstance(sorts, str) else set(sorts)
    p = _TermParser(text, sig, arity)
    t = p.data(sorts)
    p.done()
    return t


def parse_term(text: str, sig: Signature, sort: str | Iterable[str], arity: int) -> Node:
    """Parse and α-normalise a term of the given sort(s) and arity.

    >>> from csysmod.nominal.signature import lambda_signature
    >>> render_term(parse_term("A(#1, L(y. V(y)))", lambda_signature(), "Term", 1))
    'A(#1, L(x1. V(x1)))'
    """
    return alpha_normalize(parse_raw(text, sig, sort, arity))
