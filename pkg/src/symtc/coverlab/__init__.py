"""Discrete torus-grid covers, their label systems, and the cover search."""

from .affine import (
    OFFSET,
    PARITY,
    AffineSystem,
    AffineUnionFind,
    Contradiction,
    Relation,
    affine_solve,
    check_solution,
)
from .cover import (
    MODELS,
    OPEN,
    PLAIN,
    CoverViolation,
    DiscreteCover,
    Validation,
    build_system,
    figure1_cover,
    relation_template,
    torus_edges,
    validate,
)
from .search import (
    BACKTRACKING,
    BUDGET,
    EXHAUSTIVE,
    SAT,
    UNSAT,
    MinK,
    SearchOutcome,
    leaf_bound,
    min_k,
    search,
)

__all__ = [
    "OFFSET",
    "PARITY",
    "AffineSystem",
    "AffineUnionFind",
    "Contradiction",
    "Relation",
    "affine_solve",
    "check_solution",
    "MODELS",
    "OPEN",
    "PLAIN",
    "CoverViolation",
    "DiscreteCover",
    "Validation",
    "build_system",
    "figure1_cover",
    "relation_template",
    "torus_edges",
    "validate",
    "BACKTRACKING",
    "BUDGET",
    "EXHAUSTIVE",
    "SAT",
    "UNSAT",
    "MinK",
    "SearchOutcome",
    "leaf_bound",
    "min_k",
    "search",
]
