from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import csystem
from csysmod.csystem import EMPTY, Context, Morph, Section
from csysmod.monad import STAR, LMTerm, RTerm
from csysmod.subsystem import (
    Bounds,
    BoundsError,
    Checker,
    JudgementDB,
    check_subsystem,
    close,
    enumerate_contexts,
    enumerate_sections,
    epsilon_db,
    fact_line,
    hom_membership,
)

CS = csystem("option")


# -- a naive rule checker over raw option-monad tuples --------------------------
# A context is a tuple of entries (STAR or a variable), entry j having arity j;
# a judgement is (ctx, ty, tm).  Every rule is applied to every pair of facts.


def weaken(v, k):
    return v if v == STAR or v < k else v + 1


def subst(v, n, s):
    if v == STAR or v <= n:
        return v
    return s if v == n + 1 else v - 1


def raw_instances(ctxs, secs):
    for c in ctxs:
        if c:
            yield "2", c[:-1]
            yield "6", (c, c[-1], len(c))
    for (c, ty, tm) in secs:
        yield "3", c + (ty,)
    for a in ctxs:
        if not a:
            continue
        g = a[:-1]
        k = len(g) + 1
        for (c, ty, tm) in secs:
            if c[: len(g)] == g:
                new = a + tuple(weaken(v, k) for v in c[len(g):])
                yield "4", (new, weaken(ty, k), weaken(tm, k))
        for b in ctxs:
            if b[: len(g)] == g:
                yield "4a", a + tuple(weaken(v, k) for v in b[len(g):])
    for (g, s_ty, s_tm) in secs:
        n = len(g)
        head = g + (s_ty,)
        for (c, ty, tm) in secs:
            if c[: n + 1] == head:
                new = g + tuple(subst(v, n, s_tm) for v in c[n + 1:])
                yield "5", (new, subst(ty, n, s_tm), subst(tm, n, s_tm))
        for b in ctxs:
            if b[: n + 1] == head:
                yield "5a", g + tuple(subst(v, n, s_tm) for v in b[n + 1:])


def raw_length(fact):
    return len(fact[0]) if len(fact) == 3 and isinstance(fact[0], tuple) else len(fact)


def is_section(fact):
    return len(fact) == 3 and isinstance(fact[0], tuple)


def naive_violations(ctxs, secs, max_len):
    out = set() if () in ctxs else {("1", ())}
    for rule, concl in raw_instances(ctxs, secs):
        if raw_length(concl) <= max_len and concl not in (secs if is_section(concl) else ctxs):
            out.add((rule, concl))
    return out


def naive_close(ctxs, secs, max_len):
    ctxs, secs = set(ctxs) | {()}, set(secs)
    while True:
        new = [c for _, c in raw_instances(ctxs, secs) if raw_length(c) <= max_len]
        before = len(ctxs) + len(secs)
        for c in new:
            (secs if is_section(c) else ctxs).add(c)
        if len(ctxs) + len(secs) == before:
            return ctxs, secs


def to_ctx(raw):
    return Context(tuple(LMTerm(i, v) for i, v in enumerate(raw)))


def to_sec(raw):
    c, ty, tm = raw
    n = len(c)
    return Section(to_ctx(c), LMTerm(n, ty), RTerm(n, tm))


def to_fact(raw):
    return to_sec(raw) if is_section(raw) else to_ctx(raw)


def all_raw_contexts(max_len):
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [c + (v,) for c in frontier for v in [STAR, *range(1, len(c) + 1)]]
        out += frontier
    return out


def all_raw_sections(max_len):
    return [
        (c, ty, tm)
        for c in all_raw_contexts(max_len)
        for ty in [STAR, *range(1, len(c) + 1)]
        for tm in [STAR, *range(1, len(c) + 1)]
    ]


RAW_CTXS = all_raw_contexts(3)
RAW_SECS = all_raw_sections(2)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_checker_agrees_with_naive_oracle(data):
    ctxs = set(data.draw(st.lists(st.sampled_from(RAW_CTXS), max_size=8)))
    secs = set(data.draw(st.lists(st.sampled_from(RAW_SECS), max_size=8)))
    if data.draw(st.booleans()):
        ctxs.add(())
    db = JudgementDB(frozenset(map(to_ctx, ctxs)), frozenset(map(to_sec, secs)))
    report = check_subsystem(CS, db, Bounds(3, 6))
    ours = {(v.rule, v.conclusion) for v in report.violations}
    theirs = {(rule, fact_line(CS, to_fact(c))) for rule, c in naive_violations(ctxs, secs, 3)}
    assert ours == theirs


@pytest.mark.parametrize("bits", ["", "1", "0", "01", "101", "001"])
def test_close_agrees_with_naive_fixpoint(bits):
    ctxs, secs = epsilon_db(bits)
    db, _ = close(CS, ctxs, secs, Bounds(4, 6))
    raw_ctxs = {tuple(e.payload for e in c.entries) for c in ctxs}
    raw_secs = {(tuple(e.payload for e in s.ctx.entries), s.ty.payload, s.tm.payload) for s in secs}
    nc, ns = naive_close(raw_ctxs, raw_secs, 4)
    assert db.contexts == frozenset(map(to_ctx, nc))
    assert db.sections == frozenset(map(to_sec, ns))


# -- closure examples ------------------------------------------------------------


def test_close_of_nothing_is_the_empty_context():
    db, complete = close(CS, [], [], Bounds(3, 3))
    assert db == JudgementDB(frozenset({EMPTY}), frozenset())
    assert complete


def test_close_from_one_context():
    a = CS.parse_context("* ; #1")
    db, complete = close(CS, [a], [], Bounds(2, 6))
    assert CS.parse_context("*") in db
    delta = Section(a, LMTerm(2, 1), RTerm(2, 2))
    assert delta in db
    assert not complete
    assert check_subsystem(CS, db, Bounds(2, 6)).ok


def test_close_is_idempotent_and_monotone():
    b = Bounds(4, 6)
    small, _ = close(CS, *epsilon_db("01"), b)
    again, _ = close(CS, small.contexts, small.sections, b)
    assert again == small
    big, _ = close(CS, *epsilon_db("011"), b)
    assert small.contexts <= big.contexts and small.sections <= big.sections


def test_close_rejects_out_of_bounds_generators():
    with pytest.raises(BoundsError):
        close(CS, *epsilon_db("0101"), Bounds(3, 6))


def test_epsilon_generators():
    ctxs, secs = epsilon_db("1")
    assert [CS.render_context(c) for c in ctxs] == ["*", "* ; #1"]
    assert [CS.render_section(s) for s in secs] == ["* ; #1 |- #2 : *"]
    ctxs, secs = epsilon_db("00")
    assert secs == [] and [CS.render_context(c) for c in ctxs] == ["*", "* ; #1", "* ; #1 ; #2"]


def test_epsilon_one_versus_zero_differ():
    a, _ = close(CS, *epsilon_db("1"), Bounds(3, 6))
    b, _ = close(CS, *epsilon_db("0"), Bounds(3, 6))
    assert a != b


def test_first_one_bit_generates_the_next():
    """(*, 1 |- 2 : *) yields (*, 1, 2 |- 3 : *) by two weakenings and a cut."""
    db, _ = close(CS, *epsilon_db("10"), Bounds(4, 6))
    _, later = epsilon_db("11")
    assert later[-1] in db
    w1 = CS.op_Ttilde(CS.parse_context("*"), later[0])
    assert CS.render_section(w1) == "* ; * ; #2 |- #3 : *"
    w2 = CS.op_Ttilde(CS.parse_context("* ; #1"), w1)
    assert CS.render_section(w2) == "* ; #1 ; * ; #3 |- #4 : *"
    assert CS.op_Stilde(later[0], w2) == later[-1]


def test_second_one_bit_does_not_generate_the_next_in_bounds():
    db, _ = close(CS, *epsilon_db("01"), Bounds(5, 6))
    _, later = epsilon_db("011")
    assert later[-1] not in db


# -- checker details --------------------------------------------------------------


def test_missing_variable_judgement_is_rule_6():
    db = JudgementDB(frozenset({EMPTY, CS.parse_context("*")}), frozenset())
    lines = check_subsystem(CS, db, Bounds(4, 6)).lines()
    assert "RULE 6: ctx: * => MISSING typing: * |- #1 : *" in lines


def test_missing_empty_context_is_rule_1():
    report = check_subsystem(CS, JudgementDB(), Bounds(2, 2))
    assert report.lines() == ["RULE 1: - => MISSING ctx: <empty>"]


def test_checker_rejects_out_of_bounds_db():
    db = JudgementDB(frozenset({EMPTY, CS.parse_context("* ; *")}), frozenset())
    with pytest.raises(BoundsError):
        check_subsystem(CS, db, Bounds(1, 6))


def test_report_without_matches_fresh_check():
    bounds = Bounds(4, 6)
    db, _ = close(CS, *epsilon_db("011"), bounds)
    checker = Checker(CS, db, bounds)
    facts = db.facts(CS)
    rng = random.Random(2)
    for fact in [EMPTY] + rng.sample(facts, 25):
        assert checker.report_without(fact).lines() == check_subsystem(CS, db.without(fact), bounds).lines()


def test_point_monad_subsystems_in_bounds():
    """Exhaustive search at max_len 3.  Judgements whose rule-3 consequence
    falls outside the bounds are unconstrained, so the comparison is made on
    the facts of length at most 1, which every rule reaches within bounds."""
    cs = csystem("point")
    bounds = Bounds(3, 3)
    facts = list(enumerate_contexts(cs, bounds)) + list(enumerate_sections(cs, bounds))
    cores = set()
    for mask in range(2 ** len(facts)):
        chosen = [f for i, f in enumerate(facts) if mask >> i & 1]
        db = JudgementDB(frozenset(f for f in chosen if isinstance(f, Context)),
                         frozenset(f for f in chosen if isinstance(f, Section)))
        if check_subsystem(cs, db, bounds).ok:
            short = [f for f in db.facts(cs) if len(f.ctx if isinstance(f, Section) else f) <= 1]
            cores.add(tuple(fact_line(cs, f) for f in short))
    assert cores == {
        ("ctx: <empty>",),
        ("ctx: <empty>", "ctx: *", "typing: * |- * : *"),
        ("ctx: <empty>", "ctx: *", "typing: |- * : *", "typing: * |- * : *"),
    }


def test_identity_monad_has_only_the_empty_context():
    cs = csystem("identity")
    bounds = Bounds(3, 3)
    assert list(enumerate_contexts(cs, bounds)) == [EMPTY]
    assert list(enumerate_sections(cs, bounds)) == []


# -- morphism membership -------------------------------------------------------


def test_hom_membership():
    db, _ = close(CS, *epsilon_db("1"), Bounds(3, 6))
    gamma = CS.parse_context("* ; #1")
    assert hom_membership(CS, db, Morph(gamma, EMPTY, ()))
    assert hom_membership(CS, db, CS.identity(gamma))
    gen = epsilon_db("1")[1][0]
    assert hom_membership(CS, db, CS.section_to_morph(gen))
    # (* ; #1 |- * : #1) is not derivable, so [#1, *] : gamma -> gamma is not a morphism
    assert Section(gamma, LMTerm(2, 1), RTerm(2, STAR)) not in db
    assert not hom_membership(CS, db, Morph(gamma, gamma, (RTerm(2, 1), RTerm(2, STAR))))
    with pytest.raises(ValueError):
        hom_membership(CS, JudgementDB(), Morph(EMPTY, EMPTY, ()))


def test_enumeration_counts():
    bounds = Bounds(3, 6)
    assert len(list(enumerate_contexts(CS, bounds))) == len(all_raw_contexts(3))
    assert len(list(enumerate_sections(CS, bounds))) == len(all_raw_sections(3))
