from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pair
from csysmod.laws import all_laws, monad_laws, module_laws
from csysmod.monad import (
    STAR,
    ArityError,
    Assignment,
    LMTerm,
    RTerm,
    SelfModule,
    builtin_monad,
    collapse_s,
    module_product,
    module_tagged_union,
    renaming,
    subst_collapse,
    weaken_t,
)
from csysmod.testing import BrokenMonad

OPTION, OPTION_MOD = builtin_monad("option")


def opt(n, x):
    return RTerm(n, x)


def test_eta_is_variable():
    assert OPTION.eta(3, 2) == RTerm(3, 2)
    with pytest.raises(ArityError):
        OPTION.eta(2, 3)
    with pytest.raises(ArityError):
        OPTION.eta(2, 0)


def test_bind_option_examples():
    f = Assignment.of(2, [opt(2, 2), opt(2, STAR)])
    assert OPTION.bind(f, opt(2, 1)) == opt(2, 2)
    assert OPTION.bind(f, opt(2, 2)) == opt(2, STAR)
    assert OPTION.bind(f, opt(2, STAR)) == opt(2, STAR)


def test_bind_checks_arity():
    f = Assignment.of(2, [opt(2, 1)])
    with pytest.raises(ArityError):
        OPTION.bind(f, opt(2, 1))


def test_assignment_validation():
    with pytest.raises(ArityError):
        Assignment(2, 1, (opt(1, 1),))
    with pytest.raises(ArityError):
        Assignment.of(2, [opt(1, 1)])
    f = Assignment.of(1, [opt(1, 1), opt(1, STAR)])
    assert f[2] == opt(1, STAR)
    with pytest.raises(ArityError):
        f[3]


def test_identity_monad_has_no_closed_terms():
    m, _ = builtin_monad("identity")
    assert m.enumerate(0, 10) == []
    assert [t.payload for t in m.enumerate(3, 1)] == [1, 2, 3]


def test_point_monad_collapses_everything():
    m, _ = builtin_monad("point")
    f = Assignment.of(0, [RTerm(0, STAR)])
    assert m.bind(f, m.eta(1, 1)) == RTerm(0, STAR)
    assert m.free_vars(m.eta(4, 2)) == frozenset()


def test_unknown_builtin():
    with pytest.raises(ValueError, match="unknown builtin"):
        builtin_monad("list")


def test_parse_and_render_option():
    assert OPTION.render(OPTION.parse("#2", 3)) == "#2"
    assert OPTION.parse("*", 0) == STAR
    with pytest.raises(ArityError):
        OPTION.parse("#4", 3)
    with pytest.raises(ValueError):
        OPTION.parse("x", 3)


# -- weakening and collapse --------------------------------------------------


def test_weaken_collapse_option_values():
    e = opt(3, 2)
    assert weaken_t(OPTION, 2, e) == opt(4, 3)
    assert weaken_t(OPTION, 3, e) == opt(4, 2)
    assert collapse_s(OPTION, 1, opt(3, 2)) == opt(2, 1)
    assert collapse_s(OPTION, 2, opt(3, 3)) == opt(2, 2)
    with pytest.raises(ArityError):
        collapse_s(OPTION, 3, e)
    with pytest.raises(ArityError):
        weaken_t(OPTION, 5, e)


def test_subst_collapse_option_values():
    # keeps 1..n, sends n+1 to s, shifts the rest down
    s = opt(1, STAR)
    assert subst_collapse(OPTION, 1, s, opt(3, 2)) == opt(2, STAR)
    assert subst_collapse(OPTION, 1, s, opt(3, 3)) == opt(2, 2)
    assert subst_collapse(OPTION, 1, s, opt(3, 1)) == opt(2, 1)
    with pytest.raises(ArityError):
        subst_collapse(OPTION, 2, s, opt(3, 1))


@given(st.integers(1, 6).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m), st.integers(0, m))))
def test_collapse_after_weaken_is_identity(args):
    m, k, x = args
    e = opt(m, STAR if x == 0 else x)
    for j in (k, k - 1):
        if 1 <= j and j + 1 <= m + 1:
            assert collapse_s(OPTION, j, weaken_t(OPTION, k, e)) == e


@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_subst_collapse_agrees_with_two_steps(n, extra, data):
    m = n + 1 + extra
    x = data.draw(st.integers(0, m))
    e = opt(m, STAR if x == 0 else x)
    sx = data.draw(st.integers(0, n))
    s = opt(n, STAR if sx == 0 else sx)
    one_step = subst_collapse(OPTION, n, s, e)
    # substitute in place (arity m) then collapse n+1 into its neighbour
    images = [OPTION.eta(m, i) for i in range(1, m + 1)]
    images[n] = OPTION.bind(renaming(OPTION, n, m, lambda i: i), s)
    substituted = OPTION.bind(Assignment.of(m, images), e)
    if m >= n + 2:
        assert one_step == collapse_s(OPTION, n + 1, substituted)
    else:
        assert one_step.payload == substituted.payload and one_step.arity == m - 1


# -- module combinators -------------------------------------------------------


def test_product_module():
    prod = module_product(OPTION_MOD, OPTION_MOD)
    e = LMTerm(2, (1, STAR))
    f = Assignment.of(1, [opt(1, 1), opt(1, 1)])
    assert prod.rho(f, e) == LMTerm(1, (1, STAR))
    assert prod.render(e.payload) == "<#1 | *>"
    assert prod.parse("<#1 | *>", 2) == (1, STAR)
    assert prod.free_vars(e) == frozenset({1})


def test_tagged_union_module():
    union = module_tagged_union({"a": OPTION_MOD, "b": module_product(OPTION_MOD, OPTION_MOD)})
    e = LMTerm(2, ("a", 2))
    f = Assignment.of(1, [opt(1, 1), opt(1, STAR)])
    assert union.rho(f, e) == LMTerm(1, ("a", STAR))
    assert union.render(("a", 2)) == "[a] #2"
    assert union.parse("[b] <#1 | #2>", 2) == ("b", (1, 2))
    with pytest.raises(ValueError):
        union.parse("[c] #1", 2)


@pytest.mark.parametrize("name", ["identity", "point", "option"])
def test_combinator_modules_satisfy_laws(name):
    monad, _ = builtin_monad(name)
    rng = random.Random(3)
    prod = module_product(SelfModule(monad), SelfModule(monad))
    union = module_tagged_union({"x": SelfModule(monad), "y": prod})
    for mod in (prod, union):
        assert all(r.ok for r in module_laws(mod, 100, rng, 8))


@pytest.mark.parametrize("name", ["identity", "point", "option", "lambda", "mltt72", "gat_uu"])
def test_all_laws_pass(name):
    monad, module = pair(name)
    results = all_laws(monad, module, 60, seed=11)
    assert [r.line() for r in results if not r.ok] == []
    assert all(r.instances == 60 for r in results)


def test_broken_monad_is_caught():
    rng = random.Random(0)
    results = {r.law: r for r in monad_laws(BrokenMonad(), 200, rng, 4)}
    assert results["monad-1"].ok and results["monad-2"].ok
    assert not results["monad-3"].ok
    assert "counterexample" in results["monad-3"].line()


@settings(max_examples=50)
@given(st.integers(0, 2**31))
def test_laws_are_seed_deterministic(seed):
    monad, module = builtin_monad("option")
    a = [r.line() for r in all_laws(monad, module, 5, seed)]
    b = [r.line() for r in all_laws(monad, module, 5, seed)]
    assert a == b
