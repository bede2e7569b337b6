"""The three symmetric motion planning rules on the circle.

* ``GEODESIC`` follows the shortest arc; undefined for antipodal pairs.
* ``THROUGH_ONE`` and ``THROUGH_I`` move from ``z`` to ``w = (z - z')/|z - z'|``,
  sweep the half circle from ``w`` to ``-w`` that contains ``1`` (resp. ``i``),
  then finish along the geodesic from ``-w`` to ``z'``.  They are undefined
  when ``z`` and ``z'`` share a height (resp. a real part).

Each composite path spends one third of the unit time on each piece, which
makes reversal map piece ``k`` onto piece ``2 - k``.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .errors import DomainError, EqualPoints
from .geometry import (
    TOL,
    LiftedPath,
    Turn,
    circle_dist,
    concat,
    eval,
    geodesic,
    reverse,
    wrap_turn,
)


class RuleId(enum.Enum):
    GEODESIC = "geodesic"
    THROUGH_ONE = "through1"
    THROUGH_I = "throughi"

    @classmethod
    def parse(cls, name: str) -> "RuleId":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(
                f"unknown rule {name!r}; expected one of "
                + ", ".join(r.value for r in cls)
            ) from None


# turn coordinate of the point the middle half circle must pass through
_TARGET = {RuleId.THROUGH_ONE: 0.0, RuleId.THROUGH_I: 0.25}


def domain_margin(rule: RuleId, z: Turn, zp: Turn) -> float:
    """Distance (mod 1) from ``(z, zp)`` to the nearest excluded line of ``rule``.

    Positive exactly on the rule's open domain.  Excluded lines:
    geodesic ``zp - z = 1/2``; through-one ``zp - z = 0`` or ``z + zp = 1/2``;
    through-i ``zp - z = 0`` or ``z + zp = 0``.
    """
    # both terms symmetric in (z, zp) bit for bit
    diff = circle_dist(z, zp)
    if rule is RuleId.GEODESIC:
        return 0.5 - diff
    if rule is RuleId.THROUGH_ONE:
        return min(diff, circle_dist(z + zp, 0.5))
    if rule is RuleId.THROUGH_I:
        return min(diff, circle_dist(z + zp, 0.0))
    raise TypeError(f"not a RuleId: {rule!r}")


def w_point(z: Turn, zp: Turn, tol: float = TOL) -> Turn:
    """Direction of the chord from ``zp`` to ``z``, as a circle point.

    ``e(z) - e(zp) = 2i sin(pi (z - zp)) e(i pi (z + zp))``, so the direction
    is the midpoint angle turned a quarter towards the larger argument.  This
    keeps dyadic inputs exact and avoids cancellation when the points are close.
    """
    if circle_dist(z, zp) <= tol:
        raise EqualPoints(f"w is undefined for coincident points {z!r}, {zp!r}")
    z, zp = wrap_turn(z), wrap_turn(zp)
    quarter = 0.25 if z > zp else -0.25
    return wrap_turn((z + zp) / 2 + quarter)


def _half_turn(w: Turn, target: Turn) -> LiftedPath:
    # The half circle from w that contains target: counterclockwise iff
    # target sits strictly less than half a turn ahead of w.
    ahead = (target - w) % 1.0
    step = 0.5 if 0.0 < ahead < 0.5 else -0.5
    return LiftedPath.segment(w, w + step)


def plan(rule: RuleId, z: Turn, zp: Turn) -> LiftedPath:
    """Path from ``z`` to ``zp`` chosen by ``rule``, as a lift starting at ``z``."""
    if not domain_margin(rule, z, zp) > 0:
        raise DomainError(f"({z!r}, {zp!r}) is outside the domain of {rule.value}")
    if rule is RuleId.GEODESIC:
        return geodesic(z, zp, tol=0.0)

    w = w_point(z, zp, tol=0.0)
    assert circle_dist(z, w) < 0.5, "geodesic z -> w must be defined"
    first = geodesic(z, w, tol=0.0)
    middle = _half_turn(w, _TARGET[rule])
    last = geodesic(wrap_turn(middle.lifts[-1]), zp, tol=0.0)
    return concat(concat(first, middle, split=Fraction(1, 2)), last, split=Fraction(2, 3))


def check_symmetry(rule: RuleId, z: Turn, zp: Turn, samples: int = 64) -> float:
    """Largest gap between ``plan(zp, z)`` and the reversal of ``plan(z, zp)``.

    Sampled at ``samples`` equispaced times in ``[0, 1]``; for a symmetric
    rule this is round-off sized.
    """
    if not domain_margin(rule, z, zp) > 0:
        raise DomainError(f"({z!r}, {zp!r}) is outside the domain of {rule.value}")
    if samples < 2:
        raise ValueError("need at least two samples")
    back = plan(rule, zp, z)
    forth = reverse(plan(rule, z, zp))
    worst = 0.0
    for k in range(samples):
        s = Fraction(k, samples - 1)
        worst = max(worst, circle_dist(eval(back, s), eval(forth, s)))
    return worst


def max_margin(z: Turn, zp: Turn) -> float:
    """Best domain margin over the three rules; positive everywhere on the torus."""
    return max(domain_margin(rule, z, zp) for rule in RuleId)


__all__ = [
    "RuleId",
    "domain_margin",
    "w_point",
    "plan",
    "check_symmetry",
    "max_margin",
]
