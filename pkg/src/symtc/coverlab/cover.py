"""Discrete covers of the torus grid and their label systems.

Vertex ``(i, j)`` of the ``n x n`` torus grid sits at ``(i/n, j/n)`` in the
cut square.  Each of the ``k`` colors is the vertex set of one symmetric open
set.  Within a color, labels must obey

* R1: equal labels on 4-adjacent vertices of the cut square (no wraparound);
* R2: ``x(i, n-1) = x(i, 0) - 1`` across the top/bottom seam;
* R3: ``x(n-1, j) = x(0, j) + 1`` across the left/right seam;
* R4: ``x(j, i) = -x(i, j)``, so diagonal labels vanish.

Two models differ in which covers count as admissible.  ``PLAIN`` asks only
that every vertex is colored and every color is transpose closed.  ``OPEN``
(the default) also asks that the two ends of every torus edge, seam edges
included, share a color: open sets that together cover an edge must overlap
on it, so a color may not stop at a vertex unless another color already
holds both that vertex and its neighbour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import BadN, CoverFormatError
from .affine import AffineSystem, Contradiction, Relation, affine_solve

Vertex = Tuple[int, int]
Labels = Dict[Vertex, int]

OPEN = "open"
PLAIN = "plain"
MODELS = (OPEN, PLAIN)


@dataclass(frozen=True, eq=False)
class DiscreteCover:
    """``membership[c, i, j]`` is true when vertex ``(i, j)`` has color ``c``."""

    membership: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.membership, dtype=bool)
        if m.ndim != 3 or m.shape[1] != m.shape[2]:
            raise ValueError(f"membership must have shape (k, n, n), got {m.shape}")
        if m.shape[0] < 1 or m.shape[1] < 2:
            raise ValueError("need k >= 1 colors and grid order n >= 2")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "membership", m)

    @property
    def k(self) -> int:
        return self.membership.shape[0]

    @property
    def n(self) -> int:
        return self.membership.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiscreteCover):
            return NotImplemented
        return np.array_equal(self.membership, other.membership)

    def colors_at(self, i: int, j: int) -> List[int]:
        return [c for c in range(self.k) if self.membership[c, i, j]]

    def duplicate_color(self, c: int) -> "DiscreteCover":
        """Same cover with color ``c`` repeated as a new last color."""
        return DiscreteCover(np.concatenate([self.membership, self.membership[c : c + 1]]))

    def to_text(self, labels: Optional[Sequence[Labels]] = None) -> str:
        lines = [f"{self.n} {self.k}"]
        for c in range(self.k):
            for i in range(self.n):
                lines.append("".join("1" if v else "0" for v in self.membership[c, i]))
        if labels is not None:
            if len(labels) != self.k:
                raise ValueError("need one label map per color")
            lines.append("LABELS")
            for c, lab in enumerate(labels):
                for i in range(self.n):
                    lines.append(
                        " ".join(
                            str(lab[(i, j)]) if (i, j) in lab else "."
                            for j in range(self.n)
                        )
                    )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Tuple["DiscreteCover", Optional[List[Labels]]]:
        """Parse the cover file format; returns the cover and labels, if present."""
        lines = [ln.rstrip() for ln in text.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
        if not lines:
            raise CoverFormatError("empty cover file")
        head = lines[0].split()
        if len(head) != 2 or not all(tok.isdigit() for tok in head):
            raise CoverFormatError(f"line 1: expected 'N K', got {lines[0]!r}")
        n, k = int(head[0]), int(head[1])
        if n < 2 or k < 1:
            raise CoverFormatError(f"line 1: need N >= 2 and K >= 1, got {n} {k}")
        body = lines[1:]
        if len(body) < n * k:
            raise CoverFormatError(f"expected {n * k} membership rows, found {len(body)}")
        membership = np.zeros((k, n, n), dtype=bool)
        for r, line in enumerate(body[: n * k]):
            if len(line) != n or set(line) - {"0", "1"}:
                raise CoverFormatError(
                    f"line {r + 2}: expected {n} characters of '0'/'1', got {line!r}"
                )
            membership[r // n, r % n] = [ch == "1" for ch in line]
        cover = cls(membership)

        rest = body[n * k :]
        if not rest:
            return cover, None
        if rest[0] != "LABELS":
            raise CoverFormatError(f"line {n * k + 2}: expected 'LABELS', got {rest[0]!r}")
        rows = rest[1:]
        if len(rows) != n * k:
            raise CoverFormatError(f"expected {n * k} label rows, found {len(rows)}")
        labels: List[Labels] = [{} for _ in range(k)]
        for r, line in enumerate(rows):
            c, i = divmod(r, n)
            tokens = line.split()
            if len(tokens) != n:
                raise CoverFormatError(f"label row {r + 1}: expected {n} tokens")
            for j, tok in enumerate(tokens):
                if tok == ".":
                    continue
                try:
                    labels[c][(i, j)] = int(tok)
                except ValueError:
                    raise CoverFormatError(f"label row {r + 1}: bad token {tok!r}") from None
        return cover, labels


def relation_template(n: int) -> List[Relation]:
    """R1-R4 over the full grid, in the fixed order R1, R2, R3, R4."""
    rels: List[Relation] = []
    for i in range(n):
        for j in range(n):
            if j + 1 < n:
                rels.append(Relation((i, j), 1, (i, j + 1), 0, "R1"))
            if i + 1 < n:
                rels.append(Relation((i, j), 1, (i + 1, j), 0, "R1"))
    for i in range(n):
        rels.append(Relation((i, n - 1), 1, (i, 0), -1, "R2"))
    for j in range(n):
        rels.append(Relation((n - 1, j), 1, (0, j), 1, "R3"))
    for i in range(n):
        for j in range(i, n):
            rels.append(Relation((j, i), -1, (i, j), 0, "R4"))
    return rels


def build_system(cover: DiscreteCover, color: int) -> AffineSystem:
    """Label relations among the vertices of one color."""
    inside = cover.membership[color]
    variables = [(int(i), int(j)) for i, j in zip(*np.nonzero(inside))]
    rels = [
        rel
        for rel in relation_template(cover.n)
        if inside[rel.x] and inside[rel.y]
    ]
    return AffineSystem(variables, rels)


@dataclass(frozen=True)
class CoverViolation:
    kind: str  # "uncovered", "transpose", "overlap" or "contradiction"
    color: Optional[int] = None
    vertex: Optional[Vertex] = None
    contradiction: Optional[Contradiction] = None
    other: Optional[Vertex] = None

    def __str__(self) -> str:
        if self.kind == "uncovered":
            return f"uncovered vertex {self.vertex}"
        if self.kind == "overlap":
            return f"edge {self.vertex}-{self.other} shares no color"
        if self.kind == "transpose":
            i, j = self.vertex
            return f"color {self.color}: {self.vertex} present but {(j, i)} missing"
        return f"color {self.color}: {self.contradiction.message}"


@dataclass
class Validation:
    labels: Optional[List[Labels]] = None
    violations: List[CoverViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def torus_edges(n: int) -> List[Tuple[Vertex, Vertex]]:
    """Each edge of the torus grid once, seam edges included, sorted."""
    edges = set()
    for i in range(n):
        for j in range(n):
            for a, b in (((i + 1) % n, j), (i, (j + 1) % n)):
                edges.add(tuple(sorted([(i, j), (a, b)])))
    return sorted(edges)


def structural_violations(cover: DiscreteCover, model: str = OPEN) -> List[CoverViolation]:
    if model not in MODELS:
        raise ValueError(f"unknown cover model {model!r}")
    out: List[CoverViolation] = []
    covered = cover.membership.any(axis=0)
    for i, j in zip(*np.nonzero(~covered)):
        out.append(CoverViolation("uncovered", vertex=(int(i), int(j))))
    for c in range(cover.k):
        m = cover.membership[c]
        for i, j in zip(*np.nonzero(m & ~m.T)):
            out.append(CoverViolation("transpose", color=c, vertex=(int(i), int(j))))
    if model == OPEN:
        m = cover.membership
        for u, v in torus_edges(cover.n):
            if not (m[:, u[0], u[1]] & m[:, v[0], v[1]]).any():
                out.append(CoverViolation("overlap", vertex=u, other=v))
    return out


def validate(cover: DiscreteCover, model: str = OPEN) -> Validation:
    """Check cover invariants, then solve every color's label system."""
    out = Validation(violations=structural_violations(cover, model))
    if out.violations:
        return out
    labels: List[Labels] = []
    for c in range(cover.k):
        result = affine_solve(build_system(cover, c))
        if isinstance(result, Contradiction):
            out.violations.append(CoverViolation("contradiction", color=c, contradiction=result))
        else:
            labels.append(result)
    if not out.violations:
        out.labels = labels
    return out


def figure1_cover(n: int) -> DiscreteCover:
    """The three rule domains sampled on the torus grid (colors: geodesic,
    through-one, through-i)."""
    if n < 4 or n % 2:
        raise BadN(f"figure1_cover needs an even n >= 4, got {n}")
    i, j = np.indices((n, n))
    diff, total = (j - i) % n, (i + j) % n
    half = n // 2
    return DiscreteCover(
        np.stack(
            [
                diff != half,
                (diff != 0) & (total != half),
                (diff != 0) & (total != 0),
            ]
        )
    )
