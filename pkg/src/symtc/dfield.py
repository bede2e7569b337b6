"""Integer winding labels of the planning rules over the unit square.

For a rule with path ``sigma`` from ``e(t)`` to ``e(t')`` and any lift
``sigma~``, the quantity ``sigma~(1) - sigma~(0) - (t' - t)`` is an integer.
It is locally constant on the rule's domain in ``[0, 1]^2`` and satisfies

* ``d(t, 1) - d(t, 0) = -1``
* ``d(1, t) - d(0, t) = +1``
* ``d(t', t) = -d(t, t')``

This module samples that function on grids, checks the identities, splits
the grid into constant regions and renders the result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import AdjacentValueJump, DomainError, IntegralityError, OnBoundary
from .geometry import displacement, wrap_turn
from .planners import RuleId, domain_margin, max_margin, plan

INTEGER_TOL = 1e-9
LINE_TOL = 1e-12

Vertex = Tuple[int, int]


def d_raw(rule: RuleId, t: float, tp: float) -> float:
    """Unrounded d-value at square coordinates ``(t, tp)``."""
    if not (0.0 <= t <= 1.0 and 0.0 <= tp <= 1.0):
        raise DomainError(f"({t!r}, {tp!r}) is outside the unit square")
    path = plan(rule, wrap_turn(t), wrap_turn(tp))
    return displacement(path) - (tp - t)


def d_value(rule: RuleId, t: float, tp: float, integer_tol: float = INTEGER_TOL) -> int:
    raw = d_raw(rule, t, tp)
    d = round(raw)
    if abs(raw - d) > integer_tol:
        raise IntegralityError(
            f"{rule.value} at ({t!r}, {tp!r}): raw d = {raw!r} is not an integer"
        )
    return int(d)


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def closed_form_d(rule: RuleId, t: float, tp: float) -> int:
    """Table lookup of d by which side of each excluded line ``(t, tp)`` lies on.

    Independent of the planner; used as the oracle for :func:`d_value`.
    """
    if domain_margin(rule, wrap_turn(t), wrap_turn(tp)) <= LINE_TOL:
        raise OnBoundary(f"({t!r}, {tp!r}) lies on an excluded line of {rule.value}")
    if rule is RuleId.GEODESIC:
        gap = t - tp
        if gap > 0.5:
            return 1
        if gap < -0.5:
            return -1
        return 0

    order = _sign(t - tp)
    if rule is RuleId.THROUGH_ONE:
        low, high = _sign(t + tp - 0.5), _sign(t + tp - 1.5)
        if 0 in (order, low, high):
            raise OnBoundary(f"sign vanishes at ({t!r}, {tp!r})")
        return order if low > 0 and high < 0 else 0
    if rule is RuleId.THROUGH_I:
        above = _sign(t + tp - 1.0)
        if 0 in (order, above):
            raise OnBoundary(f"sign vanishes at ({t!r}, {tp!r})")
        return order if above > 0 else 0
    raise TypeError(f"not a RuleId: {rule!r}")


@dataclass(frozen=True)
class DMap:
    """d-values at the vertices ``(i/n, j/n)``, ``0 <= i, j <= n``, of the closed square.

    ``values[i, j]`` is meaningful only where ``inside[i, j]``; elsewhere the
    vertex is out of the rule's domain and ``values`` holds 0.  ``residual``
    is the worst ``|raw - round(raw)|`` met while building the map.
    """

    rule: RuleId
    n: int
    values: np.ndarray
    inside: np.ndarray
    residual: float = 0.0

    def __post_init__(self) -> None:
        shape = (self.n + 1, self.n + 1)
        if self.values.shape != shape or self.inside.shape != shape:
            raise ValueError(f"DMap arrays must have shape {shape}")
        self.values.setflags(write=False)
        self.inside.setflags(write=False)

    def get(self, i: int, j: int) -> Optional[int]:
        return int(self.values[i, j]) if self.inside[i, j] else None

    def in_domain(self) -> Iterator[Vertex]:
        for i, j in zip(*np.nonzero(self.inside)):
            yield int(i), int(j)

    def with_value(self, i: int, j: int, d: Optional[int]) -> "DMap":
        """Copy with one entry replaced (``None`` marks it out of domain)."""
        values, inside = self.values.copy(), self.inside.copy()
        inside[i, j] = d is not None
        values[i, j] = 0 if d is None else d
        return DMap(self.rule, self.n, values, inside, self.residual)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.rule.value}"]
        for i in range(self.n + 1):
            row = (
                str(int(self.values[i, j])) if self.inside[i, j] else "."
                for j in range(self.n + 1)
            )
            lines.append(" ".join(row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DMap":
        lines = [ln.rstrip() for ln in text.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
        if not lines:
            raise ValueError("empty DMap dump")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError("DMap header must be 'N <rule-name>'")
        n, rule = int(head[0]), RuleId.parse(head[1])
        if len(lines) != n + 2:
            raise ValueError(f"expected {n + 1} rows, found {len(lines) - 1}")
        values = np.zeros((n + 1, n + 1), dtype=np.int64)
        inside = np.zeros((n + 1, n + 1), dtype=bool)
        for i, line in enumerate(lines[1:]):
            tokens = line.split()
            if len(tokens) != n + 1:
                raise ValueError(f"row {i} has {len(tokens)} entries, expected {n + 1}")
            for j, tok in enumerate(tokens):
                if tok != ".":
                    values[i, j] = int(tok)
                    inside[i, j] = True
        return cls(rule, n, values, inside)


def d_map(
    rule: RuleId, n: int, line_tol: float = LINE_TOL, integer_tol: float = INTEGER_TOL
) -> DMap:
    if n < 2:
        raise ValueError(f"grid order must be at least 2, got {n}")
    values = np.zeros((n + 1, n + 1), dtype=np.int64)
    inside = np.zeros((n + 1, n + 1), dtype=bool)
    residual = 0.0
    for i in range(n + 1):
        t = i / n
        for j in range(n + 1):
            tp = j / n
            if domain_margin(rule, wrap_turn(t), wrap_turn(tp)) <= line_tol:
                continue
            raw = d_raw(rule, t, tp)
            d = round(raw)
            err = abs(raw - d)
            if err > integer_tol:
                raise IntegralityError(
                    f"{rule.value} at vertex ({i}, {j}) of n={n}: raw d = {raw!r}"
                )
            residual = max(residual, err)
            values[i, j] = d
            inside[i, j] = True
    return DMap(rule, n, values, inside, residual)


@dataclass(frozen=True)
class Violation:
    kind: str  # "C1" (top/bottom seam), "C2" (left/right seam) or "symm"
    vertices: Tuple[Vertex, Vertex]
    detail: str


def check_identities(m: DMap) -> List[Violation]:
    """Every failure of the seam and symmetry identities on ``m``; empty means pass."""
    n = m.n
    out: List[Violation] = []

    def compare(kind: str, a: Vertex, b: Vertex, expected) -> None:
        va, vb = m.get(*a), m.get(*b)
        if (va is None) != (vb is None):
            out.append(Violation(kind, (a, b), "domain membership differs"))
        elif va is not None and va != expected(vb):
            out.append(Violation(kind, (a, b), f"{va} vs {vb}"))

    for i in range(n + 1):
        compare("C1", (i, n), (i, 0), lambda v: v - 1)
    for j in range(n + 1):
        compare("C2", (n, j), (0, j), lambda v: v + 1)
    for i in range(n + 1):
        for j in range(i, n + 1):
            compare("symm", (j, i), (i, j), lambda v: -v)
    return out


@dataclass(frozen=True)
class Region:
    id: int
    d: int
    size: int
    representative: Vertex


def region_labels(m: DMap) -> Tuple[np.ndarray, List[Region]]:
    """Flood fill over 4-adjacent in-domain vertices.

    Returns a label grid (``-1`` outside the domain) and the regions in
    row-major order of their first vertex.  Raises :class:`AdjacentValueJump`
    when two adjacent in-domain vertices disagree, since d is locally constant.
    """
    size = m.n + 1
    labels = np.full((size, size), -1, dtype=np.int64)
    found: List[Region] = []
    for i0, j0 in m.in_domain():
        if labels[i0, j0] >= 0:
            continue
        rid, d = len(found), int(m.values[i0, j0])
        labels[i0, j0] = rid
        count = 0
        queue = deque([(i0, j0)])
        while queue:
            i, j = queue.popleft()
            count += 1
            for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
                if not (0 <= a < size and 0 <= b < size) or not m.inside[a, b]:
                    continue
                if m.values[a, b] != d:
                    raise AdjacentValueJump(
                        f"vertices ({i}, {j}) and ({a}, {b}) carry {d} and "
                        f"{int(m.values[a, b])}"
                    )
                if labels[a, b] < 0:
                    labels[a, b] = rid
                    queue.append((a, b))
        found.append(Region(rid, d, count, (i0, j0)))
    return labels, found


def regions(m: DMap) -> List[Region]:
    return region_labels(m)[1]


_PALETTE = {None: (255, 255, 255), 0: (200, 200, 200), 1: (220, 80, 80), -1: (80, 80, 220)}


def pixel_color(d: Optional[int]) -> Tuple[int, int, int]:
    if d in _PALETTE:
        return _PALETTE[d]
    level = 80 * ((d % 3) + 1)
    return (level, level, level)


def render_ppm(m: DMap) -> bytes:
    """Plain-text NetPBM (P3) picture of ``m``, one pixel per vertex.

    Laid out like a plot: ``t`` grows to the right, ``t'`` grows upwards, so
    the first image row is ``t' = 1``.
    """
    size = m.n + 1
    lines = ["P3", f"{size} {size}", "255"]
    for j in range(m.n, -1, -1):
        lines.append(
            " ".join("%d %d %d" % pixel_color(m.get(i, j)) for i in range(size))
        )
    return ("\n".join(lines) + "\n").encode("ascii")


def parse_ppm(data: bytes) -> np.ndarray:
    """Decode a P3 image into an ``(height, width, 3)`` array."""
    tokens = []
    for line in data.decode("ascii").splitlines():
        tokens.extend(line.split("#", 1)[0].split())
    if not tokens or tokens[0] != "P3":
        raise ValueError("not a plain PPM (P3) image")
    width, height, maxval = (int(x) for x in tokens[1:4])
    pixels = np.array([int(x) for x in tokens[4:]], dtype=np.int64)
    if pixels.size != width * height * 3 or (pixels > maxval).any():
        raise ValueError("malformed P3 pixel data")
    return pixels.reshape(height, width, 3)


def coverage_check(n: int) -> Tuple[float, Vertex]:
    """Smallest best-rule margin over the ``(n+1)^2`` grid vertices, and where."""
    if n < 2:
        raise ValueError(f"grid order must be at least 2, got {n}")
    worst, where = float("inf"), (0, 0)
    for i in range(n + 1):
        t = wrap_turn(i / n)
        for j in range(n + 1):
            margin = max_margin(t, wrap_turn(j / n))
            if margin < worst:
                worst, where = margin, (i, j)
    return worst, where


def value_census(found: Sequence[Region]) -> List[int]:
    return sorted(r.d for r in found)
