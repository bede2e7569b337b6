import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symtc.errors import DomainError, EqualPoints
from symtc.geometry import circle_dist, displacement, eval, wrap_turn
from symtc.planners import (
    RuleId,
    check_symmetry,
    domain_margin,
    max_margin,
    plan,
    w_point,
)

G, ONE, I = RuleId.GEODESIC, RuleId.THROUGH_ONE, RuleId.THROUGH_I
turns = st.floats(min_value=0.0, max_value=1.0, exclude_max=True)
rules = st.sampled_from(list(RuleId))
# pairs closer than this to an excluded line are below float resolution
RESOLVED = 1e-9


def chord_direction(z, zp):
    """Oracle for w: phase of the unit chord vector, straight from complex numbers."""
    w = cmath.exp(2j * math.pi * z) - cmath.exp(2j * math.pi * zp)
    return (cmath.phase(w / abs(w)) / (2 * math.pi)) % 1.0


@pytest.mark.parametrize(
    "rule, z, zp, expected",
    [(ONE, 0.5, 0.125, 0.125), (G, 0.75, 0.25, 0.0), (I, 0.3, 0.3, 0.0)],
)
def test_domain_margin_examples(rule, z, zp, expected):
    assert domain_margin(rule, z, zp) == expected


def test_domain_margin_through_one_line_distances():
    # t' - t is 3/8 from 0 and t + t' is 1/8 from 1/2
    assert circle_dist(0.125 - 0.5, 0.0) == 0.375
    assert circle_dist(0.5 + 0.125, 0.5) == 0.125


@given(rules, turns, turns)
def test_domain_margin_symmetric_exactly(rule, z, zp):
    assert domain_margin(rule, z, zp) == domain_margin(rule, zp, z)


@given(turns, turns)
def test_three_domains_cover_torus(z, zp):
    assert max_margin(z, zp) > 0


@pytest.mark.parametrize("z, zp, expected", [(0.5, 0.125, 0.5625), (0.25, 0.75, 0.25), (0, 0.25, 0.875)])
def test_w_point_examples(z, zp, expected):
    assert w_point(z, zp) == expected
    assert chord_direction(z, zp) == pytest.approx(expected, abs=1e-12)


def test_w_point_equal_points():
    with pytest.raises(EqualPoints):
        w_point(0.3, 0.3)


@given(turns, turns)
def test_w_point_swap_gives_antipode(z, zp):
    if circle_dist(z, zp) == 0:
        return
    assert circle_dist(w_point(zp, z, tol=0), wrap_turn(w_point(z, zp, tol=0) + 0.5)) < 1e-15
    if circle_dist(z, zp) > 1e-6:
        assert circle_dist(w_point(z, zp), chord_direction(z, zp)) < 1e-9


def test_plan_fig3():
    p = plan(ONE, 0.5, 0.125)
    assert p.times == (0, Fraction(1, 3), Fraction(2, 3), 1)
    assert p.lifts == pytest.approx((0.5, 0.5625, 1.0625, 1.125), abs=1e-12)
    assert displacement(p) == pytest.approx(0.625, abs=1e-12)


def test_plan_geodesic_short_arc():
    p = plan(G, 0.1, 0.3)
    assert len(p) == 2
    assert p.lifts == pytest.approx((0.1, 0.3), abs=1e-15)


def test_plan_geodesic_constant_when_equal():
    assert displacement(plan(G, 0.4, 0.4)) == 0


def test_plan_through_one_antipodal_pair():
    p = plan(ONE, 0.25, 0.75)
    assert p.lifts == pytest.approx((0.25, 0.25, -0.25, -0.25), abs=1e-12)
    assert displacement(p) == pytest.approx(-0.5, abs=1e-12)
    # d(1/4, 3/4) from the raw value: -1/2 - (3/4 - 1/4)
    assert displacement(p) - 0.5 == pytest.approx(-1, abs=1e-12)


def test_middle_piece_passes_through_target():
    for rule, target in ((ONE, 0.0), (I, 0.25)):
        p = plan(rule, 0.5, 0.125) if rule is ONE else plan(rule, 0.1, 0.3)
        lo, hi = sorted(p.lifts[1:3])
        assert any(lo < target + k < hi for k in range(-3, 4))


@pytest.mark.parametrize("rule, z, zp", [(G, 0.25, 0.75), (ONE, 0.3, 0.3), (ONE, 0.1, 0.4), (I, 0.2, 0.8)])
def test_plan_outside_domain(rule, z, zp):
    assert domain_margin(rule, z, zp) == pytest.approx(0, abs=1e-15)
    with pytest.raises(DomainError):
        plan(rule, z, zp)


@given(rules, turns, turns)
def test_plan_endpoints(rule, z, zp):
    if domain_margin(rule, z, zp) <= 0:
        return
    p = plan(rule, z, zp)
    assert circle_dist(eval(p, 0), z) <= 1e-9
    assert circle_dist(eval(p, 1), zp) <= 1e-9
    if rule is G:
        assert len(p) == 2 and abs(displacement(p)) < 0.5


@given(st.sampled_from([ONE, I]), turns, turns)
def test_w_never_antipodal_to_start(rule, z, zp):
    if domain_margin(rule, z, zp) <= 0:
        return
    assert circle_dist(z, w_point(z, zp, tol=0)) < 0.5


@pytest.mark.parametrize("rule, z, zp", [(ONE, 0.5, 0.125), (G, 0.1, 0.3), (I, 0.0, 0.5)])
def test_check_symmetry_examples(rule, z, zp):
    assert check_symmetry(rule, z, zp, samples=64) <= 1e-9


def test_check_symmetry_through_i_uses_quarter_turn():
    p = plan(I, 0.0, 0.5)
    assert w_point(0.0, 0.5) == pytest.approx(0.0, abs=1e-12)
    assert p.lifts[1:3] == pytest.approx((0.0, 0.5), abs=1e-12)


def test_check_symmetry_outside_domain():
    with pytest.raises(DomainError):
        check_symmetry(G, 0.0, 0.5)


@given(rules, turns, turns)
def test_reversal_symmetry_property(rule, z, zp):
    if domain_margin(rule, z, zp) <= RESOLVED:
        return
    assert check_symmetry(rule, z, zp, samples=17) <= 1e-9


def test_reversal_symmetry_seeded_pairs():
    rng = random.Random(7)
    for rule in RuleId:
        done = 0
        while done < 300:
            z, zp = rng.random(), rng.random()
            if domain_margin(rule, z, zp) > 0:
                assert check_symmetry(rule, z, zp, samples=64) <= 1e-9
                done += 1


def test_rule_parse():
    assert RuleId.parse("Through1") is ONE
    with pytest.raises(ValueError):
        RuleId.parse("through2")
