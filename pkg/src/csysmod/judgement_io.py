"""Reading and writing judgement files.

One judgement per line; lines starting with ``#`` are comments::

    ctx: T1 ; ... ; Tn
    typing: T1 ; ... ; Tn |- t : T
    typeeq: T1 ; ... ; Tn |- S = S'
    termeq: T1 ; ... ; Tn |- o = o' : T

The empty context is written ``<empty>`` (or left blank).
"""

from __future__ import annotations

from .congruence import EqDB, TermEq, TypeEq
from .csystem import CSystem, Section
from .subsystem import JudgementDB, fact_line

__all__ = ["JudgementFileError", "parse_judgements", "read_judgements", "format_judgements"]


class JudgementFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _split(text: str, sep: str, what: str) -> tuple[str, str]:
    if sep not in text:
        raise ValueError(f"expected '{sep.strip()}' in {what}")
    a, b = text.split(sep, 1) if sep == "|-" else text.rsplit(sep, 1)
    return a.strip(), b.strip()


def parse_line(cs: CSystem, line: str):
    """Parse one non-blank line into a context, judgement or equality."""
    kind, sep, body = line.partition(":")
    kind = kind.strip()
    if not sep:
        raise ValueError("expected '<kind>: ...'")
    if kind == "ctx":
        return cs.parse_context(body)
    if kind not in ("typing", "typeeq", "termeq"):
        raise ValueError(f"unknown line kind {kind!r}")
    ctx_text, rest = _split(body, "|-", kind)
    ctx = cs.parse_context(ctx_text)
    n = len(ctx)
    if kind == "typing":
        tm, ty = _split(rest, ":", "a typing judgement")
        return Section(ctx, cs.parse_type(ty, n), cs.parse_rterm(tm, n))
    if kind == "typeeq":
        lhs, rhs = _split(rest, "=", "a type equality")
        return TypeEq(ctx, cs.parse_type(lhs, n), cs.parse_type(rhs, n))
    eqn, ty = _split(rest, ":", "a term equality")
    lhs, rhs = _split(eqn, "=", "a term equality")
    return TermEq(ctx, cs.parse_type(ty, n), cs.parse_rterm(lhs, n), cs.parse_rterm(rhs, n))


def parse_judgements(cs: CSystem, text: str) -> tuple[JudgementDB, EqDB]:
    contexts, sections, type_eqs, term_eqs = set(), set(), set(), set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            fact = parse_line(cs, line)
        except (ValueError, NotImplementedError) as exc:
            raise JudgementFileError(str(exc), lineno) from None
        {
            "Context": contexts,
            "Section": sections,
            "TypeEq": type_eqs,
            "TermEq": term_eqs,
        }[type(fact).__name__].add(fact)
    return JudgementDB(frozenset(contexts), frozenset(sections)), EqDB(frozenset(type_eqs), frozenset(term_eqs))


def read_judgements(cs: CSystem, path: str) -> tuple[JudgementDB, EqDB]:
    with open(path, encoding="utf-8") as fh:
        return parse_judgements(cs, fh.read())


def format_judgements(cs: CSystem, db: JudgementDB, eq: EqDB | None = None) -> str:
    """Canonically ordered file text."""
    facts = db.facts(cs) + (eq.facts(cs) if eq is not None else [])
    return "".join(fact_line(cs, f) + "\n" for f in facts)
