from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA, csystem
from csysmod.congruence import (
    EqDB,
    PreconditionError,
    Relation,
    TermEq,
    TypeEq,
    build_sim,
    build_simeq,
    check_congruence,
    check_regularity,
    close_with_equations,
    diagonal_eqdb,
    eqsets_from_relations,
    quotient,
    restrict_eqdb,
    sections_with_boundary,
)
from csysmod.csystem import EMPTY
from csysmod.judgement_io import read_judgements
from csysmod.subsystem import Bounds, BoundsError, JudgementDB, check_subsystem, close, epsilon_db

UU_BOUNDS = Bounds(4, 4)


@pytest.fixture(scope="module")
def uu():
    cs = csystem("gat_uu")
    gens, gen_eq = read_judgements(cs, DATA / "uu_generators.jdg")
    db, eq, _ = close_with_equations(cs, gens.contexts, gens.sections, gen_eq.type_eqs, gen_eq.term_eqs, UU_BOUNDS)
    return cs, db, eq


@pytest.fixture(scope="module")
def option_closed():
    cs = csystem("option")
    db, _ = close(cs, *epsilon_db("01"), Bounds(3, 6))
    return cs, db


# -- Relation ---------------------------------------------------------------------


def test_relation_classes_and_failures():
    rel = Relation([1, 2, 3, 4], {(1, 2), (2, 3)}, key=lambda x: x)
    assert rel.classes() == [(1, 2, 3), (4,)]
    assert rel.equivalent(1, 3) and not rel.related(1, 3)
    assert rel.representative(3) == 1
    kinds = {kind for kind, *_ in rel.equivalence_failures()}
    assert {"reflexive", "symmetric", "transitive"} <= kinds
    full = Relation([1, 2], {(1, 1), (2, 2), (1, 2), (2, 1)}, key=lambda x: x)
    assert full.equivalence_failures() == []
    with pytest.raises(ValueError):
        Relation([1], {(1, 5)}, key=lambda x: x)


@settings(max_examples=100)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=12))
def test_relation_partition_is_generated_equivalence(pairs):
    rel = Relation(range(8), pairs, key=lambda x: x)
    # brute-force reflexive-symmetric-transitive closure
    reach = {(a, a) for a in range(8)} | set(pairs) | {(b, a) for a, b in pairs}
    while True:
        more = {(a, d) for a, b in reach for c, d in reach if b == c} - reach
        if not more:
            break
        reach |= more
    assert all(rel.equivalent(a, b) == ((a, b) in reach) for a in range(8) for b in range(8))
    assert all(min(cls) == cls[0] for cls in rel.classes())


# -- the diagonal congruence ---------------------------------------------------------


def test_diagonal_congruence_passes(option_closed):
    cs, db = option_closed
    eq = diagonal_eqdb(db)
    bounds = Bounds(3, 6)
    assert check_congruence(cs, db, eq, bounds).ok
    assert check_regularity(cs, db, eq, bounds).ok
    q = quotient(cs, db, eq, bounds)
    assert all(len(c) == 1 for c in q.ctx_classes + q.sec_classes)
    assert q.violations == []
    for k, (c,) in enumerate(q.ctx_classes):
        if len(c):
            assert q.ctx_classes[q.ft_table[k]] == (c.ft(),)
        # delta(c) has a boundary one longer than c, so the longest contexts have none
        if len(c) and len(c) < 3:
            assert q.sec_classes[q.delta_table[k]] == (cs.op_delta(c),)


def test_dropping_a_reflexivity_triple_fails_2b(option_closed):
    cs, db = option_closed
    eq = diagonal_eqdb(db)
    victim = min(eq.type_eqs, key=lambda e: e.key(cs))
    report = check_congruence(cs, db, EqDB(eq.type_eqs - {victim}, eq.term_eqs), Bounds(3, 6))
    assert "2b" in report.rules()
    assert any(victim.line(cs) in v.conclusion for v in report.violations if v.rule == "2b")


def test_dropping_a_term_reflexivity_fails_3b(option_closed):
    cs, db = option_closed
    eq = diagonal_eqdb(db)
    victim = min(eq.term_eqs, key=lambda e: e.key(cs))
    report = check_congruence(cs, db, EqDB(eq.type_eqs, eq.term_eqs - {victim}), Bounds(3, 6))
    assert "3b" in report.rules()


def test_identity_relations_roundtrip_to_diagonal(option_closed):
    cs, db = option_closed
    sim = {(c, c) for c in db.contexts}
    simeq = {(j, j) for j in sections_with_boundary(db)}
    assert eqsets_from_relations(cs, db, sim, simeq) == restrict_eqdb(db, diagonal_eqdb(db))
    with pytest.raises(PreconditionError):
        eqsets_from_relations(cs, db, set(), simeq)


def test_congruence_requires_a_subsystem():
    cs = csystem("option")
    db = JudgementDB(frozenset({EMPTY, cs.parse_context("*")}), frozenset())
    with pytest.raises(PreconditionError):
        check_congruence(cs, db, EqDB(), Bounds(3, 3))


def test_out_of_bounds_equality_is_rejected(option_closed):
    cs, db = option_closed
    long_ctx = cs.parse_context("* ; * ; * ; *")
    eq = EqDB(frozenset({TypeEq(long_ctx, cs.parse_type("*", 4), cs.parse_type("*", 4))}), frozenset())
    with pytest.raises(BoundsError):
        check_congruence(cs, db, eq, Bounds(3, 6))


# -- the U = U' theory ---------------------------------------------------------------


def test_uu_closure_sizes(uu):
    cs, db, eq = uu
    assert (len(db.contexts), len(db.sections), len(eq.type_eqs), len(eq.term_eqs)) == (31, 196, 60, 196)


def test_uu_passes_every_condition(uu):
    cs, db, eq = uu
    assert check_subsystem(cs, db, UU_BOUNDS).ok
    assert check_congruence(cs, db, eq, UU_BOUNDS).lines() == []
    assert check_regularity(cs, db, eq, UU_BOUNDS).lines() == []


def test_uu_relations(uu):
    cs, db, eq = uu
    sim = build_sim(cs, db, eq)
    u, u2 = cs.parse_context("U"), cs.parse_context("U'")
    assert sim.equivalent(u, u2)
    assert all(len(a) == len(b) for cls in sim.classes() for a in cls for b in cls)
    assert sim.equivalence_failures() == []
    simeq = build_simeq(cs, db, eq, sim)
    assert simeq.equivalence_failures() == []
    j, j2 = cs.op_delta(u), cs.op_delta(u2)
    assert simeq.equivalent(j, j2)


def test_uu_quotient(uu):
    cs, db, eq = uu
    q = quotient(cs, db, eq, UU_BOUNDS)
    assert q.violations == []
    assert len(q.ctx_classes) == 5
    assert [cs.render_context(c[0]) for c in q.ctx_classes[:3]] == ["<empty>", "U", "U ; U"]
    cid = {c: k for k, cls in enumerate(q.ctx_classes) for c in cls}
    ux = cs.parse_context("U' ; U")
    assert q.ft_table[cid[ux]] == cid[cs.parse_context("U")] == cid[cs.parse_context("U'")]
    assert q.instances_checked > 1000


def test_uu_roundtrip_both_directions(uu):
    cs, db, eq = uu
    sim = build_sim(cs, db, eq)
    simeq = build_simeq(cs, db, eq, sim)
    back = eqsets_from_relations(cs, db, sim, simeq)
    assert back == restrict_eqdb(db, eq)
    assert build_sim(cs, db, back) == sim
    assert build_simeq(cs, db, back) == simeq


def test_asymmetric_equality_file_fails(uu):
    cs, db, _ = uu
    db2, eq2 = read_judgements(cs, DATA / "uu_asymmetric.jdg")
    assert db2 == db
    report = check_congruence(cs, db2, eq2, UU_BOUNDS)
    assert "2c" in report.rules()


def test_missing_sigma_context_fails_regularity(uu):
    cs, db, eq = uu
    victim = cs.parse_context("U' ; U")
    assert victim in db.contexts
    smaller = JudgementDB(db.contexts - {victim}, db.sections)
    reg = check_regularity(cs, smaller, restrict_eqdb(smaller, eq), UU_BOUNDS)
    assert not reg.ok


# -- closure with equations on random generators ---------------------------------------


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_closure_with_equations_always_passes(seed):
    cs = csystem("option")
    rng = random.Random(seed)
    bounds = Bounds(3, 6)
    n = rng.randint(0, 1)
    gamma = cs.parse_context("* ; #1"[: 1 if n == 1 else 0] or "<empty>")
    vals = ["*"] + [f"#{i}" for i in range(1, n + 1)]
    teqs = [TypeEq(gamma, cs.parse_type(rng.choice(vals), n), cs.parse_type(rng.choice(vals), n))]
    ty = cs.parse_type(rng.choice(vals), n)
    meqs = [TermEq(gamma, ty, cs.parse_rterm(rng.choice(vals), n), cs.parse_rterm(rng.choice(vals), n))]
    db, eq, complete = close_with_equations(cs, [gamma], [], teqs, meqs, bounds)
    assert check_subsystem(cs, db, bounds).ok
    assert check_congruence(cs, db, eq, bounds).ok
    assert check_regularity(cs, db, eq, bounds).ok
    assert quotient(cs, db, eq, bounds).violations == []
