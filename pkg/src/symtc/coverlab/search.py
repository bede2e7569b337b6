"""Exhaustive and backtracking search for covers that admit labels.

Only vertices ``(i, j)`` with ``i <= j`` are decided; ``(j, i)`` copies the
choice, which makes every color symmetric.  Each decided vertex takes a
nonempty color subset, encoded as a bitmask ``1 .. 2**k - 1``, and vertices
and masks are tried in increasing order, so the first satisfiable leaf is the
lexicographically least witness.

Relations are fed to one :class:`AffineUnionFind` per color as soon as both
endpoints are decided; under the ``open`` model every torus edge is checked
for a shared color at the same moment.  Backtracking prunes a subtree at the first
contradiction; exhaustive mode still walks every leaf and counts it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .affine import AffineUnionFind
from .cover import (
    MODELS,
    OPEN,
    DiscreteCover,
    Labels,
    figure1_cover,
    relation_template,
    torus_edges,
    validate,
)

SAT = "sat"
UNSAT = "unsat"
BUDGET = "budget"

EXHAUSTIVE = "exhaustive"
BACKTRACKING = "backtracking"


@dataclass
class SearchOutcome:
    status: str
    nodes: int
    witness: Optional[DiscreteCover] = None
    labels: Optional[List[Labels]] = None
    frontier: Tuple[int, ...] = ()  # masks decided when the budget ran out
    source: str = "search"

    @property
    def sat(self) -> bool:
        return self.status == SAT


class _OutOfBudget(Exception):
    pass


def decision_order(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def leaf_bound(n: int, k: int) -> int:
    return (2**k - 1) ** (n * (n + 1) // 2)


def masks_to_cover(n: int, k: int, masks: Sequence[int]) -> DiscreteCover:
    membership = np.zeros((k, n, n), dtype=bool)
    for (i, j), mask in zip(decision_order(n), masks):
        for c in range(k):
            if mask >> c & 1:
                membership[c, i, j] = membership[c, j, i] = True
    return DiscreteCover(membership)


def search(
    n: int,
    k: int,
    mode: str = BACKTRACKING,
    budget: Optional[int] = None,
    model: str = OPEN,
) -> SearchOutcome:
    """Decide whether some symmetric ``k``-color cover of the ``n``-grid admits labels.

    ``budget`` caps the node counter (leaves in exhaustive mode, partial
    assignments in backtracking mode).
    """
    if n < 2 or k < 1:
        raise ValueError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    if mode not in (EXHAUSTIVE, BACKTRACKING):
        raise ValueError(f"unknown search mode {mode!r}")
    if model not in MODELS:
        raise ValueError(f"unknown cover model {model!r}")
    prune = mode == BACKTRACKING

    order = decision_order(n)
    depth = len(order)
    step_of = {}
    for t, (i, j) in enumerate(order):
        step_of[(i, j)] = step_of[(j, i)] = t

    # relations that become checkable once step t is decided
    active: List[List[Tuple[int, int, int, int, int, int]]] = [[] for _ in range(depth)]
    for rel in relation_template(n):
        sx, sy = step_of[rel.x], step_of[rel.y]
        x = rel.x[0] * n + rel.x[1]
        y = rel.y[0] * n + rel.y[1]
        active[max(sx, sy)].append((x, rel.sign, y, rel.const, sx, sy))
    # pairs of steps whose vertices share a torus edge
    touching: List[List[Tuple[int, int]]] = [[] for _ in range(depth)]
    if model == OPEN:
        for u, v in torus_edges(n):
            su, sv = step_of[u], step_of[v]
            pair = (min(su, sv), max(su, sv))
            if pair not in touching[pair[1]]:
                touching[pair[1]].append(pair)

    solvers = [AffineUnionFind(n * n) for _ in range(k)]
    colors = [(c, 1 << c) for c in range(k)]
    masks = [0] * depth
    all_masks = range(1, 2**k)
    nodes = 0
    found: List[int] = []

    def consistent(t: int, mask: int) -> bool:
        for su, sv in touching[t]:
            if not masks[su] & masks[sv]:
                return False
        for c, bit in colors:
            if not mask & bit:
                continue
            uf = solvers[c]
            for x, s, y, const, sx, sy in active[t]:
                if masks[sx] & bit and masks[sy] & bit and uf.add(x, s, y, const):
                    return False
        return True

    def visit(t: int, alive: bool) -> bool:
        nonlocal nodes
        if t == depth:
            if not prune:
                nodes += 1
                if budget is not None and nodes > budget:
                    raise _OutOfBudget
            if alive:
                found.extend(masks)
            return alive
        for mask in all_masks:
            if prune:
                nodes += 1
                if budget is not None and nodes > budget:
                    raise _OutOfBudget
            masks[t] = mask
            marks = [uf.checkpoint() for uf in solvers]
            ok = alive and consistent(t, mask)
            if ok or not prune:
                if visit(t + 1, ok):
                    return True
            for uf, mark in zip(solvers, marks):
                uf.rollback(mark)
            masks[t] = 0
        return False

    try:
        hit = visit(0, True)
    except _OutOfBudget:
        frontier = tuple(m for m in masks if m)
        return SearchOutcome(BUDGET, nodes - 1, frontier=frontier)
    if not hit:
        return SearchOutcome(UNSAT, nodes)

    witness = masks_to_cover(n, k, found)
    check = validate(witness, model)
    if not check.ok:
        raise AssertionError(f"search produced an invalid witness: {check.violations}")
    return SearchOutcome(SAT, nodes, witness=witness, labels=check.labels)


@dataclass
class MinK:
    value: Optional[int]  # smallest k found satisfiable
    certified: bool  # every smaller k was proven unsatisfiable
    outcomes: List[Tuple[int, SearchOutcome]] = field(default_factory=list)


def min_k(
    n: int,
    max_k: int,
    budget: Optional[int] = None,
    mode: str = BACKTRACKING,
    model: str = OPEN,
) -> MinK:
    """Search ``k = 1, 2, ...`` until a satisfiable cover appears.

    At ``k = 3`` with ``n`` even and at least 4 the sampled rule domains are
    used as a ready-made witness instead of searching.
    """
    result = MinK(None, True)
    for k in range(1, max_k + 1):
        if k == 3 and n >= 4 and n % 2 == 0:
            cover = figure1_cover(n)
            check = validate(cover, model)
            if check.ok:
                outcome = SearchOutcome(
                    SAT, 0, witness=cover, labels=check.labels, source="figure1"
                )
            else:
                outcome = search(n, k, mode, budget, model)
        else:
            outcome = search(n, k, mode, budget, model)
        result.outcomes.append((k, outcome))
        if outcome.sat:
            result.value = k
            return result
        if outcome.status == BUDGET:
            result.certified = False
    return result
