"""Command-line front end.

Exit status: 0 when everything checked passes, 1 when a check fails and 2
for usage, parse and bounds errors.
"""

from __future__ import annotations

import argparse
import importlib
import re
import sys
from collections.abc import Sequence

from .congruence import (
    EqDB,
    PreconditionError,
    check_congruence,
    check_regularity,
    close_with_equations,
    quotient,
)
from .csystem import CSystem
from .judgement_io import format_judgements, read_judgements
from .laws import all_laws
from .monad import Module, Monad, SelfModule, builtin_monad
from .nominal import (
    Signature,
    alpha_normalize,
    builtin_signature,
    parse_raw,
    parse_signature,
    render_term,
    sig_module,
    sig_monad,
)
from .subsystem import Bounds, BoundsError, JudgementDB, check_subsystem, close, epsilon_db, fact_line

__all__ = ["main", "build_parser", "resolve_monad", "UsageError"]

DEFAULT_SEED = 0


class UsageError(Exception):
    """Bad arguments or unreadable input (exit status 2)."""


# -- monad selection ----------------------------------------------------------------------------------


def _signature_pair(sig: Signature) -> tuple[Monad, Module]:
    monad = sig_monad(sig)
    return monad, sig_module(sig, monad)


def load_signature(path: str) -> Signature:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read signature {path}: {exc.strerror}") from None
    name = re.sub(r"\.sig$", "", path.replace("\\", "/").rsplit("/", 1)[-1])
    return parse_signature(text, name=name)


def resolve_monad(name: str | None = None, sig_path: str | None = None) -> tuple[Monad, Module]:
    """Builtin monad, builtin or file signature, or a ``py:module:attr``
    plugin returning a monad or a ``(monad, module)`` pair."""
    if sig_path is not None:
        return _signature_pair(load_signature(sig_path))
    if name is None:
        raise UsageError("one of --monad or --sig is required")
    if name in ("identity", "point", "option"):
        return builtin_monad(name)
    if name.startswith("py:"):
        try:
            _, mod_name, attr = name.split(":", 2)
            obj = getattr(importlib.import_module(mod_name), attr)
        except (ValueError, ImportError, AttributeError) as exc:
            raise UsageError(f"cannot load plugin {name!r}: {exc}") from None
        if callable(obj) and not isinstance(obj, (Monad, tuple)):
            obj = obj()
        if isinstance(obj, Monad):
            return obj, SelfModule(obj)
        if isinstance(obj, tuple) and len(obj) == 2:
            return obj
        raise UsageError(f"plugin {name!r} is not a monad")
    try:
        return _signature_pair(builtin_signature(name))
    except ValueError:
        raise UsageError(
            f"unknown monad {name!r}; expected identity, point, option, lambda, mltt72, "
            "gat(...), py:module:attr or --sig PATH"
        ) from None


# -- output ----------------------------------------------------------------------------------------------------


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.lines: list[str] = []

    def emit(self, line: str = ""):
        self.lines.append(line)

    def flush(self):
        text = "".join(line + "\n" for line in self.lines)
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _cs(args) -> CSystem:
    monad, module = resolve_monad(args.monad, args.sig)
    return CSystem(monad, module)


def _bounds(args) -> Bounds:
    try:
        return Bounds(args.max_len, args.max_size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(cs: CSystem, path: str | None) -> tuple[JudgementDB, EqDB]:
    if path is None:
        return JudgementDB(), EqDB()
    try:
        return read_judgements(cs, path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# -- commands ----------------------------------------------------------------------------------------------------


def cmd_laws(args) -> int:
    monad, module = resolve_monad(args.monad, args.sig)
    print(f"monad: {monad.name}")
    print(f"seed: {args.seed}")
    print(f"samples: {args.samples}")
    results = all_laws(monad, module, args.samples, args.seed, args.max_size)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    print(f"verdict: {'pass' if not failed else 'fail'}")
    return 1 if failed else 0


def cmd_check(args) -> int:
    cs = _cs(args)
    bounds = _bounds(args)
    db, inline_eq = _read(cs, args.judgements)
    eq = inline_eq
    if args.eq:
        _, extra = _read(cs, args.eq)
        eq = EqDB(eq.type_eqs | extra.type_eqs, eq.term_eqs | extra.term_eqs)
    report = check_subsystem(cs, db, bounds)
    print(f"bounds: {bounds}")
    print(f"contexts: {len(db.contexts)} judgements: {len(db.sections)}")
    for line in report.lines():
        print(line)
    print(f"subsystem: {report.verdict}")
    if not report.ok:
        return 1
    if not len(eq) and not args.eq:
        return 0
    cong = check_congruence(cs, db, eq, bounds)
    reg = check_regularity(cs, db, eq, bounds)
    for line in cong.lines() + reg.lines():
        print(line)
    print(f"type equalities: {len(eq.type_eqs)} term equalities: {len(eq.term_eqs)}")
    print(f"congruence: {cong.verdict}")
    print(f"regularity: {reg.verdict}")
    return 0 if cong.ok and reg.ok else 1


def cmd_close(args) -> int:
    cs = _cs(args)
    bounds = _bounds(args)
    if args.epsilon is not None:
        if not re.fullmatch(r"[01]*", args.epsilon):
            raise UsageError("--epsilon expects a string of 0s and 1s")
        if cs.monad.name != "option":
            raise UsageError("--epsilon needs --monad option")
        ctxs, secs = epsilon_db(args.epsilon)
        gen_db, gen_eq = JudgementDB(frozenset(ctxs), frozenset(secs)), EqDB()
    else:
        gen_db, gen_eq = _read(cs, args.judgements)
    if args.eq:
        _, extra = _read(cs, args.eq)
        gen_eq = EqDB(gen_eq.type_eqs | extra.type_eqs, gen_eq.term_eqs | extra.term_eqs)
    if len(gen_eq):
        db, eq, complete = close_with_equations(
            cs, gen_db.contexts, gen_db.sections, gen_eq.type_eqs, gen_eq.term_eqs, bounds
        )
    else:
        db, complete = close(cs, gen_db.contexts, gen_db.sections, bounds)
        eq = None
    text = format_judgements(cs, db, eq)
    summary = [
        f"fixpoint: {'true' if complete else 'false'}",
        f"contexts: {len(db.contexts)}",
        f"judgements: {len(db.sections)}",
    ]
    if eq is not None:
        summary += [f"type equalities: {len(eq.type_eqs)}", f"term equalities: {len(eq.term_eqs)}"]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print("\n".join(summary))
    else:
        sys.stdout.write(text)
        print("\n".join("# " + s for s in summary))
    return 0


def cmd_demo_epsilon(args) -> int:
    from .monad import OptionMonad

    for bits in (args.bits_a, args.bits_b):
        if not re.fullmatch(r"[01]*", bits):
            raise UsageError(f"bits must be 0s and 1s, got {bits!r}")
    monad, module = builtin_monad("option")
    assert isinstance(monad, OptionMonad)
    cs = CSystem(monad, module)
    bounds = _bounds(args)
    closures = []
    for bits in (args.bits_a, args.bits_b):
        ctxs, secs = epsilon_db(bits)
        db, complete = close(cs, ctxs, secs, bounds)
        closures.append(db)
        print(f"bits {bits or '(empty)'}: contexts {len(db.contexts)}, judgements {len(db.sections)}, "
              f"fixpoint {'true' if complete else 'false'}")
    a, b = closures
    only_a = (a.contexts - b.contexts) | (a.sections - b.sections)
    only_b = (b.contexts - a.contexts) | (b.sections - a.sections)
    print(f"bounds: {bounds}")
    print(f"symmetric difference: {len(only_a) + len(only_b)} ({len(only_a)} only in A, {len(only_b)} only in B)")
    diff = sorted(
        [(0, x) for x in only_a] + [(1, x) for x in only_b],
        key=lambda p: (len(p[1]), _fact_sort(cs, p[1]), p[0]),
    )
    if diff:
        side, fact = diff[0]
        print(f"first difference (only in {'AB'[side]}): {fact_line(cs, fact)}")
    else:
        print("first difference: none")
    print("note: bounded evidence, not a proof")
    return 0


def _fact_sort(cs: CSystem, fact):
    from .csystem import Context

    if isinstance(fact, Context):
        return (0, cs.ctx_key(fact))
    return (1, cs.section_key(fact))


def cmd_quotient(args) -> int:
    cs = _cs(args)
    bounds = _bounds(args)
    db, eq = _read(cs, args.judgements)
    if args.eq:
        _, extra = _read(cs, args.eq)
        eq = EqDB(eq.type_eqs | extra.type_eqs, eq.term_eqs | extra.term_eqs)
    report = check_subsystem(cs, db, bounds)
    if not report.ok:
        for line in report.lines():
            print(line)
        print("quotient: not computed, subsystem check failed")
        return 1
    cong = check_congruence(cs, db, eq, bounds)
    reg = check_regularity(cs, db, eq, bounds)
    if not (cong.ok and reg.ok):
        for line in cong.lines() + reg.lines():
            print(line)
        print("quotient: not computed, congruence check failed")
        return 1
    q = quotient(cs, db, eq, bounds, check=False)
    out = _Output(args.out)
    for line in q.lines(cs):
        out.emit(line)
    out.flush()
    if args.out:
        print(f"context classes: {len(q.ctx_classes)}")
        print(f"judgement classes: {len(q.sec_classes)}")
    print(f"well-definedness: {'pass' if not q.violations else 'fail'}")
    return 0 if not q.violations else 1


def cmd_normalize(args) -> int:
    monad, module = resolve_monad(args.monad, args.sig)
    sig = getattr(monad, "sig", None)
    arity = args.arity
    if arity is None:
        arity = max((int(k) for k in re.findall(r"#(\d+)", args.term)), default=0)
    if sig is None:
        print(monad.render(monad.parse(args.term, arity)))
        return 0
    sorts = [args.sort] if args.sort else [sig.term_sort, *sig.type_sorts]
    raw = parse_raw(args.term, sig, sorts, arity)
    print(render_term(alpha_normalize(raw)))
    return 0


# -- argument parsing ----------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csysmod",
        description="C-systems of modules over monads: law suites, closure and congruence checkers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def monad_opts(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--monad", help="identity, point, option, lambda, mltt72, gat(T/n,...;t/n,...) or py:module:attr")
        g.add_argument("--sig", help="signature file")

    def bound_opts(p, max_len=4, max_size=6):
        p.add_argument("--max-len", type=int, default=max_len, help=f"maximal context length (default {max_len})")
        p.add_argument("--max-size", type=int, default=max_size, help=f"maximal term size (default {max_size})")

    p = sub.add_parser("laws", help="run the randomised law suites")
    monad_opts(p)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-size", type=int, default=12)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("check", help="check closure and congruence conditions")
    monad_opts(p)
    p.add_argument("--judgements", required=True)
    p.add_argument("--eq")
    bound_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("close", help="close generators under the rules within bounds")
    monad_opts(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--judgements")
    src.add_argument("--epsilon", metavar="BITS", help="use the epsilon generators for BITS (option monad)")
    p.add_argument("--eq")
    p.add_argument("--out")
    bound_opts(p)
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("demo-epsilon", help="compare the closures of two epsilon families")
    p.add_argument("bits_a")
    p.add_argument("bits_b")
    bound_opts(p, max_len=5)
    p.set_defaults(func=cmd_demo_epsilon)

    p = sub.add_parser("quotient", help="classes of a congruence and the induced operations")
    monad_opts(p)
    p.add_argument("--judgements", required=True)
    p.add_argument("--eq")
    p.add_argument("--out")
    bound_opts(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("normalize", help="alpha-normalise and print a term")
    monad_opts(p)
    p.add_argument("term")
    p.add_argument("--sort")
    p.add_argument("--arity", type=int)
    p.set_defaults(func=cmd_normalize)

    # accepted on every command for a uniform interface
    for name, action in sub.choices.items():
        if name not in ("laws",):
            action.add_argument("--seed", type=int, default=DEFAULT_SEED, help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BoundsError, PreconditionError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
