"""Integer solutions of systems of relations ``x = s*y + c`` with ``s = +-1``.

The workhorse is :class:`AffineUnionFind`, a disjoint-set forest in which
every node stores its value as ``sign * parent + offset``.  Closing a cycle
either agrees with what is already known, pins a component to a single value
(``r = -r + c`` with ``c`` even), or contradicts:

* ``offset``: ``r = r + c`` with ``c != 0``, or two pins that disagree;
* ``parity``: ``r = -r + c`` with ``c`` odd, so ``2r`` would be odd.

The forest uses union by size and no path compression so that every change
can be rolled back, which the cover search relies on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple, Union

OFFSET = "offset"
PARITY = "parity"


class Relation(NamedTuple):
    """``x = sign * y + const``."""

    x: Hashable
    sign: int
    y: Hashable
    const: int
    tag: str = ""

    def holds(self, values: Dict[Hashable, int]) -> bool:
        return values[self.x] == self.sign * values[self.y] + self.const

    def __str__(self) -> str:
        op = "" if self.sign == 1 else "-"
        tail = f" {'+' if self.const >= 0 else '-'} {abs(self.const)}" if self.const else ""
        label = f"[{self.tag}] " if self.tag else ""
        return f"{label}x{self.x} = {op}x{self.y}{tail}"


@dataclass
class AffineSystem:
    variables: List[Hashable]
    relations: List[Relation] = field(default_factory=list)

    def __post_init__(self) -> None:
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise ValueError("duplicate variable")
        for rel in self.relations:
            if rel.sign not in (1, -1):
                raise ValueError(f"relation sign must be +1 or -1: {rel}")
            if rel.x not in known or rel.y not in known:
                raise ValueError(f"relation references an unknown variable: {rel}")


@dataclass(frozen=True)
class Contradiction:
    kind: str  # OFFSET or PARITY
    relations: Tuple[int, ...]  # indices into the system, closing relation last
    message: str = ""


LabelSolution = Dict[Hashable, int]


class AffineUnionFind:
    """Incremental solver over variables ``0 .. n-1`` with checkpoints."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.sign = [1] * n
        self.offset = [0] * n
        self.size = [1] * n
        self.pinned: List[Optional[int]] = [None] * n
        self._log: list = []

    def __len__(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> Tuple[int, int, int]:
        """Return ``(root, s, c)`` with ``x = s*root + c``."""
        s, c = 1, 0
        parent, sign, offset = self.parent, self.sign, self.offset
        while parent[x] != x:
            # x_prev = s*x + c and x = sign*p + offset
            c += s * offset[x]
            s *= sign[x]
            x = parent[x]
        return x, s, c

    def checkpoint(self) -> int:
        return len(self._log)

    def rollback(self, mark: int) -> None:
        log = self._log
        while len(log) > mark:
            entry = log.pop()
            if entry[0] == "link":
                _, child, root = entry
                self.parent[child] = child
                self.sign[child] = 1
                self.offset[child] = 0
                self.size[root] -= self.size[child]
            else:
                _, root, old = entry
                self.pinned[root] = old

    def _pin(self, root: int, value: int) -> Optional[str]:
        old = self.pinned[root]
        if old is None:
            self._log.append(("pin", root, None))
            self.pinned[root] = value
            return None
        return None if old == value else OFFSET

    def add(self, x: int, s: int, y: int, c: int) -> Optional[str]:
        """Impose ``x = s*y + c``; return the contradiction kind, or ``None``.

        On contradiction the structure may be partially updated; roll back to
        a checkpoint taken before the call.
        """
        rx, sx, cx = self.find(x)
        ry, sy, cy = self.find(y)
        # sx*rx + cx = s*(sy*ry + cy) + c, solved for rx
        S = sx * s * sy
        C = sx * (s * cy + c - cx)
        if rx == ry:
            if S == 1:
                return None if C == 0 else OFFSET
            if C % 2:
                return PARITY
            return self._pin(rx, C // 2)

        if self.size[rx] > self.size[ry]:
            # express ry through rx: ry = S*(rx - C)
            child, root, cs, cc = ry, rx, S, -S * C
        else:
            child, root, cs, cc = rx, ry, S, C
        self.parent[child] = root
        self.sign[child] = cs
        self.offset[child] = cc
        self.size[root] += self.size[child]
        self._log.append(("link", child, root))
        held = self.pinned[child]
        if held is not None:
            # child = cs*root + cc
            return self._pin(root, cs * (held - cc))
        return None

    def values(self) -> List[int]:
        """Canonical solution: in each component the lowest-numbered variable
        is 0 unless the component is pinned."""
        n = len(self.parent)
        resolved = [self.find(v) for v in range(n)]
        root_value: Dict[int, int] = {}
        for v, (r, s, c) in enumerate(resolved):
            if r in root_value:
                continue
            pin = self.pinned[r]
            root_value[r] = pin if pin is not None else -s * c
        return [s * root_value[r] + c for r, s, c in resolved]


def _forest_path(
    adjacency: Dict[int, List[Tuple[int, int]]], start: int, goal: int
) -> List[int]:
    """Relation indices along the spanning-forest path from start to goal."""
    back: Dict[int, Tuple[int, int]] = {start: (start, -1)}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        for nxt, rel in adjacency.get(node, ()):
            if nxt not in back:
                back[nxt] = (node, rel)
                queue.append(nxt)
    path = []
    node = goal
    while node != start:
        node, rel = back[node]
        path.append(rel)
    return path[::-1]


def affine_solve(system: AffineSystem) -> Union[LabelSolution, Contradiction]:
    """Decide ``system`` exactly over the integers.

    Returns the canonical solution (see :meth:`AffineUnionFind.values`) or the
    first :class:`Contradiction` met while adding relations in order.  The
    contradiction lists relations that are unsolvable on their own: the
    offending cycle, plus any earlier pinning cycle and the forest path that
    joins it.
    """
    index = {v: k for k, v in enumerate(system.variables)}
    uf = AffineUnionFind(len(index))
    adjacency: Dict[int, List[Tuple[int, int]]] = {}
    # per pinned root: a variable on the pinning cycle and the cycle's relations
    pin_cycle: Dict[int, Tuple[int, Tuple[int, ...]]] = {}

    def fail(kind: str, parts: Sequence[int]) -> Contradiction:
        involved = tuple(dict.fromkeys(p for p in parts if p != k)) + (k,)
        return Contradiction(kind, involved, _describe(system, kind, involved))

    for k, rel in enumerate(system.relations):
        x, y = index[rel.x], index[rel.y]
        (rx, sx, _), (ry, sy, _) = uf.find(x), uf.find(y)
        kind = uf.add(x, rel.sign, y, rel.const)
        if rx == ry:
            cycle = tuple(_forest_path(adjacency, x, y)) + (k,)
            if kind is not None:
                # a self-negating cycle can only clash with an earlier pin
                if kind == OFFSET and sx * rel.sign * sy == -1:
                    anchor, prior = pin_cycle[rx]
                    return fail(kind, prior + tuple(_forest_path(adjacency, anchor, x)) + cycle)
                return fail(kind, cycle)
            if uf.pinned[rx] is not None and rx not in pin_cycle:
                pin_cycle[rx] = (x, cycle)
            continue

        adjacency.setdefault(x, []).append((y, k))
        adjacency.setdefault(y, []).append((x, k))
        root = uf.find(x)[0]
        left, right = pin_cycle.pop(rx, None), pin_cycle.pop(ry, None)
        if kind is not None:
            # only two pins that disagree can break a merge
            (a, ra), (b, rb) = left, right
            return fail(kind, ra + rb + tuple(_forest_path(adjacency, a, b)))
        if left or right:
            pin_cycle[root] = left or right

    values = uf.values()
    return {v: values[k] for v, k in index.items()}


def _describe(system: AffineSystem, kind: str, involved: Sequence[int]) -> str:
    what = "2x would be odd" if kind == PARITY else "inconsistent offsets"
    rels = "; ".join(str(system.relations[k]) for k in involved)
    return f"{kind} contradiction ({what}): {rels}"


def check_solution(system: AffineSystem, values: LabelSolution) -> List[Relation]:
    """Relations of ``system`` that ``values`` violates."""
    return [rel for rel in system.relations if not rel.holds(values)]
