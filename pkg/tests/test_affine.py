import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    bounded_witness,
    complete_witness,
    literal_bounded_exists,
    random_system,
)
from symtc.coverlab.affine import (
    OFFSET,
    PARITY,
    AffineSystem,
    AffineUnionFind,
    Contradiction,
    Relation,
    affine_solve,
    check_solution,
)

SEED = 20240601


def test_parity_example():
    # x0 = -x1 and x1 = x0 - 1 force 2*x0 = 1
    system = AffineSystem([0, 1], [Relation(0, -1, 1, 0), Relation(1, 1, 0, -1)])
    result = affine_solve(system)
    assert isinstance(result, Contradiction)
    assert result.kind == PARITY
    assert result.relations == (0, 1)
    assert "parity" in result.message


def test_pin_example():
    assert affine_solve(AffineSystem([0], [Relation(0, -1, 0, 2)])) == {0: 1}


def test_offset_example():
    result = affine_solve(AffineSystem([0, 1], [Relation(0, 1, 1, 0), Relation(1, 1, 0, 1)]))
    assert isinstance(result, Contradiction) and result.kind == OFFSET


def test_conflicting_pins_are_offset():
    rels = [Relation("a", -1, "a", 2), Relation("a", -1, "a", 4)]
    result = affine_solve(AffineSystem(["a"], rels))
    assert result.kind == OFFSET
    assert result.relations == (0, 1)


def test_pins_meeting_through_merge():
    rels = [Relation("a", -1, "a", 2), Relation("b", -1, "b", 0), Relation("a", 1, "b", 0)]
    result = affine_solve(AffineSystem(["a", "b"], rels))
    assert result.kind == OFFSET
    assert set(result.relations) == {0, 1, 2}


def test_free_components_are_canonical():
    system = AffineSystem(
        ["p", "q", "r", "s"], [Relation("q", 1, "p", 3), Relation("s", -1, "r", 1)]
    )
    assert affine_solve(system) == {"p": 0, "q": 3, "r": 0, "s": 1}


def test_empty_and_unconstrained():
    assert affine_solve(AffineSystem([])) == {}
    assert affine_solve(AffineSystem(["x", "y"])) == {"x": 0, "y": 0}


def test_system_validation():
    with pytest.raises(ValueError):
        AffineSystem([0, 0])
    with pytest.raises(ValueError):
        AffineSystem([0], [Relation(0, 2, 0, 0)])
    with pytest.raises(ValueError):
        AffineSystem([0], [Relation(0, 1, 9, 0)])


def test_relation_str():
    assert str(Relation((0, 1), -1, (1, 0), 0, "R4")) == "[R4] x(0, 1) = -x(1, 0)"
    assert str(Relation("a", 1, "b", -2)) == "xa = xb - 2"


def test_contradiction_cycle_is_a_real_obstruction():
    rng = random.Random(SEED + 1)
    for _ in range(300):
        system = random_system(rng)
        result = affine_solve(system)
        if isinstance(result, Contradiction):
            sub = AffineSystem(system.variables, [system.relations[k] for k in result.relations])
            assert complete_witness(sub) is None
            last = result.relations[-1]
            assert last == max(result.relations)
            prefix = AffineSystem(system.variables, system.relations[:last])
            assert not isinstance(affine_solve(prefix), Contradiction)


def test_componentwise_box_matches_literal_enumeration():
    rng = random.Random(SEED + 2)
    for _ in range(200):
        system = random_system(rng, max_vars=4, max_rels=6)
        assert (bounded_witness(system) is not None) == literal_bounded_exists(system)


def test_against_oracles_seeded():
    rng = random.Random(SEED)
    for _ in range(1000):
        system = random_system(rng)
        result = affine_solve(system)
        solvable = not isinstance(result, Contradiction)
        assert solvable == (complete_witness(system) is not None)
        if solvable:
            assert check_solution(system, result) == []
        boxed = bounded_witness(system) is not None
        if boxed != solvable:
            # only a solvable system whose solutions all leave the box
            assert solvable and not boxed
            assert max(abs(v) for v in result.values()) > 4


relation = st.builds(
    lambda x, s, y, c: (x, s, y, c),
    st.integers(0, 5),
    st.sampled_from((1, -1)),
    st.integers(0, 5),
    st.integers(-4, 4),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(relation, max_size=12), st.lists(relation, max_size=6))
def test_rollback_restores_state(first, second):
    uf = AffineUnionFind(6)
    for x, s, y, c in first:
        mark = uf.checkpoint()
        if uf.add(x, s, y, c):
            uf.rollback(mark)
    before = (list(uf.parent), list(uf.sign), list(uf.offset), list(uf.size), list(uf.pinned))
    mark = uf.checkpoint()
    for x, s, y, c in second:
        uf.add(x, s, y, c)
    uf.rollback(mark)
    assert (uf.parent, uf.sign, uf.offset, uf.size, uf.pinned) == before


@settings(max_examples=200, deadline=None)
@given(st.lists(relation, max_size=12))
def test_incremental_values_satisfy_accepted(rels):
    uf = AffineUnionFind(6)
    kept = []
    for x, s, y, c in rels:
        mark = uf.checkpoint()
        if uf.add(x, s, y, c):
            uf.rollback(mark)
        else:
            kept.append(Relation(x, s, y, c))
    vals = dict(enumerate(uf.values()))
    assert all(r.holds(vals) for r in kept)


@settings(max_examples=200, deadline=None)
@given(st.lists(relation, max_size=10), st.randoms(use_true_random=False))
def test_solvability_ignores_relation_order(rels, rnd):
    rels = [Relation(*r) for r in rels]
    a = affine_solve(AffineSystem(list(range(6)), rels))
    shuffled = rels[:]
    rnd.shuffle(shuffled)
    b = affine_solve(AffineSystem(list(range(6)), shuffled))
    assert isinstance(a, Contradiction) == isinstance(b, Contradiction)
    if not isinstance(a, Contradiction):
        # canonical values do not depend on the order either
        assert a == b
