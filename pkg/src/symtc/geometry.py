"""Circle points measured in turns, and paths stored as lifts to the real line.

A point of S^1 is the number ``t`` with ``0 <= t < 1``; the covering map sends
``u`` to ``exp(2*pi*i*u)``.  Halves, quarters and eighths are exact binary
floats, so the interesting values in this package stay bit-exact.

Path times are stored as :class:`fractions.Fraction` so that reversal
(``s -> 1 - s``) is an exact involution.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import AntipodalError, EndpointMismatch

TOL = 1e-9

Turn = float
SquarePoint = Tuple[float, float]


def wrap_turn(u: float) -> Turn:
    """Reduce ``u`` modulo 1 into ``[0, 1)``."""
    if not math.isfinite(u):
        raise ValueError(f"non-finite turn value: {u!r}")
    r = u % 1.0
    # u % 1.0 can round up to exactly 1.0 for tiny negative u
    return 0.0 if r >= 1.0 else r


def circle_dist(a: Turn, b: Turn) -> float:
    """Arc distance between two circle points, in turns (``0 <= d <= 1/2``)."""
    d = (a - b) % 1.0
    return min(d, (b - a) % 1.0)


def short_diff(a: Turn, b: Turn, tol: float = TOL) -> float:
    """Signed displacement of the geodesic from ``a`` to ``b``.

    Raises :class:`AntipodalError` when the points are within ``tol`` of
    antipodal, where the geodesic is not unique.
    """
    if circle_dist(a, b) >= 0.5 - tol:
        raise AntipodalError(f"{a!r} and {b!r} are antipodal within {tol}")
    d = (b - a) % 1.0
    return d - 1.0 if d > 0.5 else d


def _as_time(s) -> Fraction:
    return s if isinstance(s, Fraction) else Fraction(s)


@dataclass(frozen=True)
class LiftedPath:
    """Piecewise-linear path ``s -> u(s)`` in the universal cover of the circle.

    ``times`` start at 0, end at 1 and strictly increase; ``lifts`` are the
    lift coordinates (in turns) at those times.
    """

    times: Tuple[Fraction, ...]
    lifts: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.times) != len(self.lifts):
            raise ValueError("times and lifts differ in length")
        if len(self.times) < 2:
            raise ValueError("a path needs at least two breakpoints")
        if self.times[0] != 0 or self.times[-1] != 1:
            raise ValueError("path times must run from 0 to 1")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("path times must strictly increase")
        if not all(math.isfinite(u) for u in self.lifts):
            raise ValueError("non-finite lift value")

    @classmethod
    def from_breakpoints(cls, points: Iterable[Tuple[object, float]]) -> "LiftedPath":
        pts = list(points)
        return cls(
            tuple(_as_time(s) for s, _ in pts), tuple(float(u) for _, u in pts)
        )

    @classmethod
    def constant(cls, u: float) -> "LiftedPath":
        return cls((Fraction(0), Fraction(1)), (float(u), float(u)))

    @classmethod
    def segment(cls, u0: float, u1: float) -> "LiftedPath":
        return cls((Fraction(0), Fraction(1)), (float(u0), float(u1)))

    @property
    def breakpoints(self) -> Sequence[Tuple[Fraction, float]]:
        return list(zip(self.times, self.lifts))

    def __len__(self) -> int:
        return len(self.times)


def geodesic(a: Turn, b: Turn, tol: float = TOL) -> LiftedPath:
    """Shortest-arc path from ``a`` to ``b``, lifted to start at ``a``."""
    return LiftedPath.segment(a, a + short_diff(a, b, tol))


def eval_lift(p: LiftedPath, s: float) -> float:
    if not 0 <= s <= 1:
        raise ValueError(f"path time {s!r} outside [0, 1]")
    k = bisect.bisect_right(p.times, s)
    if k >= len(p.times):
        return p.lifts[-1]
    s0, s1 = p.times[k - 1], p.times[k]
    u0, u1 = p.lifts[k - 1], p.lifts[k]
    frac = float((s - s0) / (s1 - s0)) if isinstance(s, Fraction) else (
        (s - float(s0)) / float(s1 - s0)
    )
    return u0 + (u1 - u0) * frac


def eval(p: LiftedPath, s: float) -> Turn:  # noqa: A001 - mirrors eval_lift
    """Circle point of ``p`` at time ``s``."""
    return wrap_turn(eval_lift(p, s))


def reverse(p: LiftedPath) -> LiftedPath:
    """The path traversed backwards, ``s -> p(1 - s)``."""
    return LiftedPath(
        tuple(1 - s for s in reversed(p.times)), tuple(reversed(p.lifts))
    )


def displacement(p: LiftedPath) -> float:
    """Net lift change ``u(1) - u(0)``; independent of the chosen lift."""
    return p.lifts[-1] - p.lifts[0]


def concat(
    p: LiftedPath, q: LiftedPath, tol: float = TOL, split=Fraction(1, 2)
) -> LiftedPath:
    """Run ``p`` on ``[0, split]`` then ``q`` on ``[split, 1]``.

    ``q`` is translated by the integer that makes the lifts meet at the
    junction.  The junction keeps ``p``'s end value.
    """
    split = _as_time(split)
    if not 0 < split < 1:
        raise ValueError("split must lie strictly inside (0, 1)")
    end, start = p.lifts[-1], q.lifts[0]
    if circle_dist(wrap_turn(end), wrap_turn(start)) > tol:
        raise EndpointMismatch(
            f"path ends at {wrap_turn(end)!r} but next starts at {wrap_turn(start)!r}"
        )
    shift = float(round(end - start))
    times = [s * split for s in p.times]
    times += [split + (1 - split) * s for s in q.times[1:]]
    lifts = list(p.lifts) + [u + shift for u in q.lifts[1:]]
    return LiftedPath(tuple(times), tuple(lifts))
