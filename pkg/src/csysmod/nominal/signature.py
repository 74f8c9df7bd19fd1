"""Nominal signatures: declaration, concrete syntax and builtin examples."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property

from .syntax import (
    UNIT_SORT,
    VAR_SORT,
    AbsSort,
    CompoundSort,
    DataSort,
    data_sorts_in,
    render_sort,
    tuple_sort,
)

__all__ = [
    "SignatureError",
    "OpDecl",
    "Signature",
    "parse_signature",
    "render_signature",
    "builtin_signature",
    "lambda_signature",
    "mltt72_signature",
    "gat_signature",
]


class SignatureError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class OpDecl:
    name: str
    arg_sort: CompoundSort
    result_sort: str

    def __str__(self):
        return f"{self.name} : {render_sort(self.arg_sort)} -> {self.result_sort}"


@dataclass(frozen=True)
class Signature:
    """A quadruple (Σ, Term, P, Type).

    ``params`` maps each data-sort other than ``term_sort`` that has
    parameters to the tuple of its parameter names.
    """

    data_sorts: tuple[str, ...]
    term_sort: str
    type_sorts: tuple[str, ...]
    ops: tuple[OpDecl, ...] = ()
    params: tuple[tuple[str, tuple[str, ...]], ...] = ()
    name: str = field(default="sig", compare=False)

    def __post_init__(self):
        for attr in ("data_sorts", "type_sorts", "ops"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(
            self, "params", tuple((s, tuple(ns)) for s, ns in dict(self.params).items())
        )
        sorts = set(self.data_sorts)
        if len(sorts) != len(self.data_sorts):
            raise SignatureError("duplicate data-sort")
        if self.term_sort not in sorts:
            raise SignatureError(f"term sort {self.term_sort!r} is not a data-sort")
        for s in self.type_sorts:
            if s not in sorts:
                raise SignatureError(f"type sort {s!r} is not a data-sort")
        seen = set()
        for op in self.ops:
            if op.name in seen:
                raise SignatureError(f"duplicate operation {op.name!r}")
            seen.add(op.name)
            for s in data_sorts_in(op.arg_sort) | {op.result_sort}:
                if s not in sorts:
                    raise SignatureError(f"operation {op.name!r} mentions unknown sort {s!r}")
        for s, names in self.params:
            if s not in sorts:
                raise SignatureError(f"parameters for unknown sort {s!r}")
            if s == self.term_sort:
                raise SignatureError("the term sort cannot carry parameters")
            if len(set(names)) != len(names):
                raise SignatureError(f"duplicate parameter for sort {s!r}")

    @cached_property
    def op_table(self) -> dict[str, OpDecl]:
        return {op.name: op for op in self.ops}

    def op(self, name: str) -> OpDecl:
        try:
            return self.op_table[name]
        except KeyError:
            raise KeyError(f"unknown operation {name!r}") from None

    @cached_property
    def param_table(self) -> dict[str, tuple[str, ...]]:
        return dict(self.params)

    def params_of(self, sort: str) -> tuple[str, ...]:
        return self.param_table.get(sort, ())

    def ops_into(self, sort: str) -> list[OpDecl]:
        """Operations with result ``sort``, ordered by name."""
        return sorted((op for op in self.ops if op.result_sort == sort), key=lambda o: o.name)

    def __str__(self):
        return render_signature(self)


def render_signature(sig: Signature) -> str:
    lines = [
        "sorts: " + " ".join(sig.data_sorts),
        "term_sort: " + sig.term_sort,
        "type_sorts: " + " ".join(sig.type_sorts),
    ]
    for s, names in sig.params:
        lines.append(f"param {s} : " + " ".join(names))
    lines.extend(f"op {op}" for op in sig.ops)
    return "\n".join(lines) + "\n"


# -- concrete syntax -----------------------------------------------------------------

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_SORT_TOKEN = re.compile(rf"\s*(?:(?P<ident>{_IDENT})|(?P<one>1)|(?P<punct>[(),.]))")


class _SortParser:
    def __init__(self, text: str, line: int, offset: int):
        self.text, self.line, self.offset = text, line, offset
        self.pos = 0
        self.used: set[str] = set()

    def error(self, msg):
        raise SignatureError(msg, self.line, self.offset + self.pos + 1)

    def peek(self):
        m = _SORT_TOKEN.match(self.text, self.pos)
        if not m:
            return None, None
        kind = m.lastgroup
        return kind, m.group(kind)

    def take(self):
        m = _SORT_TOKEN.match(self.text, self.pos)
        if not m:
            self.error(f"unexpected input {self.text[self.pos:].strip()!r}")
        self.pos = m.end()
        return m.lastgroup, m.group(m.lastgroup)

    def expect(self, tok):
        kind, val = self.take()
        if val != tok:
            self.error(f"expected {tok!r}, found {val!r}")

    def parse(self) -> CompoundSort:
        sort = self.sort()
        if self.text[self.pos:].strip():
            self.error(f"trailing input {self.text[self.pos:].strip()!r}")
        return sort

    def sort(self) -> CompoundSort:
        kind, val = self.take()
        if kind == "one":
            return UNIT_SORT
        if kind == "ident":
            if val == "Var":
                k2, v2 = self.peek()
                if v2 == ".":
                    self.take()
                    return AbsSort(self.sort())
                return VAR_SORT
            self.used.add(val)
            return DataSort(val)
        if val == "(":
            items = [self.sort()]
            while True:
                _, v = self.take()
                if v == ")":
                    break
                if v != ",":
                    self.error(f"expected ',' or ')', found {v!r}")
                items.append(self.sort())
            return tuple_sort(items)
        self.error(f"unexpected {val!r} in sort expression")


_LINE = re.compile(r"^\s*(?P<head>sorts|term_sort|type_sorts|param|op)\b")


def parse_signature(text: str, name: str = "sig") -> Signature:
    """Parse the line-oriented signature format.

    >>> sig = parse_signature('''
    ... sorts: Term
    ... term_sort: Term
    ... op V : Var -> Term
    ... op L : Var.Term -> Term
    ... op A : (Term, Term) -> Term
    ... ''')
    >>> [op.name for op in sig.ops]
    ['V', 'L', 'A']
    """
    sorts: list[str] | None = None
    term_sort: str | None = None
    type_sorts: list[str] | None = None
    params: dict[str, tuple[str, ...]] = {}
    ops: list[OpDecl] = []
    op_lines: dict[str, int] = {}
    refs: list[tuple[str, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _LINE.match(line)
        if not m:
            raise SignatureError(f"unrecognised declaration {line.strip()!r}", lineno, 1)
        head = m.group("head")
        rest = line[m.end():]
        col0 = m.end()
        if head in ("sorts", "term_sort", "type_sorts"):
            body = rest.strip()
            if not body.startswith(":"):
                raise SignatureError(f"expected ':' after {head}", lineno, col0 + 1)
            names = body[1:].split()
            for n in names:
                if not re.fullmatch(_IDENT, n):
                    raise SignatureError(f"bad sort name {n!r}", lineno)
            if head == "sorts":
                sorts = names
            elif head == "type_sorts":
                type_sorts = names
            else:
                if len(names) != 1:
                    raise SignatureError("term_sort takes exactly one sort", lineno)
                term_sort = names[0]
        elif head == "param":
            if ":" not in rest:
                raise SignatureError("expected 'param <sort> : <names>'", lineno)
            sort_part, names_part = rest.split(":", 1)
            sort = sort_part.strip()
            names = tuple(names_part.split())
            if not re.fullmatch(_IDENT, sort) or not names:
                raise SignatureError("expected 'param <sort> : <names>'", lineno)
            params[sort] = params.get(sort, ()) + names
            refs.append((sort, lineno, col0 + 1))
        else:
            if ":" not in rest or "->" not in rest:
                raise SignatureError("expected 'op <name> : <sort> -> <sort>'", lineno)
            name_part, decl = rest.split(":", 1)
            op_name = name_part.strip()
            if not re.fullmatch(_IDENT, op_name):
                raise SignatureError(f"bad operation name {op_name!r}", lineno, col0 + 1)
            arg_text, result = decl.rsplit("->", 1)
            result = result.strip()
            if not re.fullmatch(_IDENT, result):
                raise SignatureError(f"bad result sort {result!r}", lineno)
            offset = col0 + len(name_part) + 1
            parser = _SortParser(arg_text, lineno, offset)
            arg_sort = parser.parse()
            if op_name in op_lines:
                raise SignatureError(
                    f"duplicate operation {op_name!r} (first declared on line {op_lines[op_name]})",
                    lineno,
                )
            op_lines[op_name] = lineno
            for s in parser.used:
                refs.append((s, lineno, None))
            refs.append((result, lineno, None))
            ops.append(OpDecl(op_name, arg_sort, result))

    if term_sort is None:
        raise SignatureError("missing 'term_sort:' declaration")
    if sorts is None:
        sorts = [term_sort]
    known = set(sorts)
    for s, lineno, col in refs:
        if s not in known:
            raise SignatureError(f"unknown sort {s!r}", lineno, col)
    if type_sorts is None:
        type_sorts = [term_sort]
    return Signature(tuple(sorts), term_sort, tuple(type_sorts), tuple(ops), tuple(params.items()), name)


# -- builtin signatures ------------------------------------------------------------------

TERM = DataSort("Term")
TYPE = DataSort("Type")


def lambda_signature() -> Signature:
    return Signature(
        ("Term",),
        "Term",
        ("Term",),
        (
            OpDecl("V", VAR_SORT, "Term"),
            OpDecl("L", AbsSort(TERM), "Term"),
            OpDecl("A", tuple_sort([TERM, TERM]), "Term"),
        ),
        name="lambda",
    )


def _abs(sort: CompoundSort, times: int = 1) -> CompoundSort:
    for _ in range(times):
        sort = AbsSort(sort)
    return sort


def mltt72_signature(max_index: int = 2) -> Signature:
    """The MLTT72 operations, with the finite-type families truncated at
    ``n <= max_index``.

    ``E``, ``D``, ``R_n`` and ``R`` take the type family as an extra trailing
    ``Var.Term`` argument.  Symbols that are not identifiers are spelled out:
    ``+`` is ``plus`` and ``0`` is ``zero``; ``N_n``, ``i_n`` and ``R_n`` become
    ``N{n}``, ``i{i}_{n}`` and ``R{n}``.
    """
    fam = _abs(TERM)
    ops = [
        OpDecl("v", VAR_SORT, "Term"),
        OpDecl("Pi", tuple_sort([TERM, _abs(TERM)]), "Term"),
        OpDecl("lambda", tuple_sort([TERM, _abs(TERM)]), "Term"),
        OpDecl("app", tuple_sort([TERM, TERM]), "Term"),
        OpDecl("Sigma", tuple_sort([TERM, _abs(TERM)]), "Term"),
        OpDecl("pair", tuple_sort([TERM, TERM]), "Term"),
        OpDecl("E", tuple_sort([TERM, _abs(TERM, 2), fam]), "Term"),
        OpDecl("plus", tuple_sort([TERM, TERM]), "Term"),
        OpDecl("i", TERM, "Term"),
        OpDecl("j", TERM, "Term"),
        OpDecl("D", tuple_sort([TERM, _abs(TERM), _abs(TERM), fam]), "Term"),
        OpDecl("V", UNIT_SORT, "Term"),
    ]
    for n in range(max_index + 1):
        ops.append(OpDecl(f"N{n}", UNIT_SORT, "Term"))
        for i in range(1, n + 1):
            ops.append(OpDecl(f"i{i}_{n}", UNIT_SORT, "Term"))
        ops.append(OpDecl(f"R{n}", tuple_sort([TERM] * (2 * n + 1) + [fam]), "Term"))
    ops += [
        OpDecl("N", UNIT_SORT, "Term"),
        OpDecl("zero", UNIT_SORT, "Term"),
        OpDecl("s", TERM, "Term"),
        OpDecl("R", tuple_sort([TERM, TERM, _abs(TERM, 2), fam]), "Term"),
    ]
    return Signature(("Term",), "Term", ("Term",), tuple(ops), name="mltt72")


def gat_signature(type_symbols, term_symbols=()) -> Signature:
    """Algebraic signature of a GAT.

    ``type_symbols`` and ``term_symbols`` are ``(name, degree)`` pairs (or
    mappings); a symbol of degree ``n`` gets the arity ``(Term, ..., Term)``
    with ``n`` components.  The variable injections ``v_Term`` and
    ``v_Type`` are included.
    """
    def pairs(x):
        return list(x.items()) if hasattr(x, "items") else list(x)

    ops = [OpDecl("v_Term", VAR_SORT, "Term"), OpDecl("v_Type", VAR_SORT, "Type")]
    for result, symbols in (("Type", type_symbols), ("Term", term_symbols)):
        for name, degree in pairs(symbols):
            ops.append(OpDecl(name, tuple_sort([TERM] * int(degree)), result))
    return Signature(("Term", "Type"), "Term", ("Type",), tuple(ops), name="gat")


_GAT_SYMBOL = re.compile(rf"\s*({_IDENT})\s*/\s*(\d+)\s*")


def _parse_gat_symbols(text: str) -> list[tuple[str, int]]:
    out = []
    for part in filter(str.strip, text.split(",")):
        m = _GAT_SYMBOL.fullmatch(part)
        if not m:
            raise ValueError(f"bad GAT symbol {part!r}; expected name/degree")
        out.append((m.group(1), int(m.group(2))))
    return out


def builtin_signature(name: str, **options) -> Signature:
    """Look up ``lambda``, ``mltt72`` or ``gat``.

    ``gat`` takes ``types=`` and ``terms=`` symbol lists; the compact form
    ``"gat(U/0,El/1;c/0)"`` (types, then term symbols after ``;``) is also
    accepted as ``name``.
    """
    if name == "lambda":
        return lambda_signature()
    if name == "mltt72":
        return mltt72_signature(options.get("max_index", 2))
    if name == "gat":
        return gat_signature(options.get("types", ()), options.get("terms", ()))
    m = re.fullmatch(r"gat\((.*)\)", name.strip())
    if m:
        types, _, terms = m.group(1).partition(";")
        return gat_signature(_parse_gat_symbols(types), _parse_gat_symbols(terms))
    raise ValueError(f"unknown builtin signature {name!r}")
