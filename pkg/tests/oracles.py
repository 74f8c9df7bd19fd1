"""Independent oracles shared by the unit and acceptance tests."""

from __future__ import annotations

import random

from csysmod.monad import Assignment, RTerm
from csysmod.nominal import Abs, Bound, FreeVar, Op, Pair, free_vars, lambda_signature, sig_monad

LAM = lambda_signature()
LAM_MONAD = sig_monad(LAM)


# -- an independent named lambda calculus used as an oracle -------------------
# Terms are ("var", x) | ("lam", x, body) | ("app", a, b).  Free variable i is
# named "z<i>"; binder names come from a small pool that overlaps with those
# names so that capture is provoked.

POOL = ["a", "b", "c", "z1", "z2", "z3", "w0", "w1"]


def named_fv(t):
    if t[0] == "var":
        return {t[1]}
    if t[0] == "lam":
        return named_fv(t[2]) - {t[1]}
    return named_fv(t[1]) | named_fv(t[2])


def to_named(t, rng, env=()):
    """Nameless λ-term to a named one, choosing binder names at random from
    ``POOL`` but never capturing a name the body refers to."""
    if isinstance(t, FreeVar):
        return ("var", f"z{t.index}")
    if isinstance(t, Op) and t.name == "V":
        return ("var", env[t.arg.index])
    if isinstance(t, Op) and t.name == "A":
        return ("app", to_named(t.arg.left, rng, env), to_named(t.arg.right, rng, env))
    assert isinstance(t, Op) and t.name == "L"
    outer = {f"z{i}" for i in free_vars(t.arg.body)} | set(env)
    for _ in range(20):
        x = rng.choice(POOL)
        trial = to_named(t.arg.body, rng, (x,) + env)
        # the name must not capture any variable that the body uses from outside
        if named_fv(trial) - {x} == _outside(t.arg.body, env):
            return ("lam", x, trial)
    x = next(f"w{k}" for k in range(2, 100) if f"w{k}" not in outer)
    return ("lam", x, to_named(t.arg.body, rng, (x,) + env))


def _outside(body, env):
    names = set()

    def walk(t, depth):
        if isinstance(t, Bound):
            if t.index > depth:
                names.add(env[t.index - depth - 1])
        elif isinstance(t, FreeVar):
            names.add(f"z{t.index}")
        elif isinstance(t, Op):
            walk(t.arg, depth)
        elif isinstance(t, Abs):
            walk(t.body, depth + 1)
        elif isinstance(t, Pair):
            walk(t.left, depth)
            walk(t.right, depth)

    walk(body, 0)
    return names


def fresh(avoid):
    k = 0
    while f"f{k}" in avoid:
        k += 1
    return f"f{k}"


def named_subst(t, sub):
    """Capture-avoiding simultaneous substitution of named terms."""
    if t[0] == "var":
        return sub.get(t[1], t)
    if t[0] == "app":
        return ("app", named_subst(t[1], sub), named_subst(t[2], sub))
    x, body = t[1], t[2]
    inner = {k: v for k, v in sub.items() if k != x}
    danger = set().union(*(named_fv(v) for k, v in inner.items() if k in named_fv(body)))
    if x in danger:
        y = fresh(danger | named_fv(body) | set(inner))
        body = named_subst(body, {x: ("var", y)})
        x = y
    return ("lam", x, named_subst(body, inner))


def from_named(t, env=()):
    if t[0] == "var":
        if t[1] in env:
            return Op("V", Bound(env.index(t[1])))
        return FreeVar(int(t[1][1:]))
    if t[0] == "app":
        return Op("A", Pair(from_named(t[1], env), from_named(t[2], env)))
    return Op("L", Abs(from_named(t[2], (t[1],) + env)))


def oracle_bind(f: Assignment, t: RTerm, rng) -> RTerm:
    sub = {f"z{i}": to_named(c.payload, rng) for i, c in enumerate(f.components, 1)}
    return RTerm(f.target_arity, from_named(named_subst(to_named(t.payload, rng), sub)))


def oracle_agreement(instances: int, seed: int) -> tuple[int, object]:
    """Compare nameless bind with the named oracle; return the number of
    agreeing instances and the first disagreement (or ``None``)."""
    rng = random.Random(seed)
    for k in range(instances):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        if m == 0:
            m = 1  # closed λ-terms of small size exist, but images need variables
        t = LAM_MONAD.random_term(n, 10, rng)
        f = Assignment.of(m, [LAM_MONAD.random_term(m, 6, rng) for _ in range(n)])
        ours = LAM_MONAD.bind(f, t)
        theirs = oracle_bind(f, t, rng)
        if ours != theirs:
            return k, (t, f, ours, theirs)
    return instances, None
