"""Command-line front end.

Exit codes: 0 success, 1 a finding (property violation, out-of-domain input,
or a satisfiable cover where none should exist), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import dfield
from .coverlab import cover as coverfile
from .coverlab.search import BACKTRACKING, BUDGET, EXHAUSTIVE, SearchOutcome, min_k, search
from .errors import CoverFormatError, SymTCError
from .geometry import displacement
from .planners import RuleId, check_symmetry, plan

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2
SYMMETRY_TOL = 1e-9
SYMMETRY_SAMPLES = 256


def fmt(x: float) -> str:
    return format(float(x) + 0.0, ".12g")


def _grid_order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"grid order must be at least 2, got {n}")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def _real(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return x


def _rule(text: str) -> RuleId:
    try:
        return RuleId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(out: Optional[str], data: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(data)
    else:
        Path(out).write_text(data)


def cmd_plan(args) -> int:
    try:
        path = plan(args.rule, args.start, args.end)
    except SymTCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDING
    for s, u in path.breakpoints:
        print(fmt(s), fmt(u))
    print("displacement", fmt(displacement(path)))
    return EXIT_OK


def cmd_d(args) -> int:
    try:
        print(dfield.d_value(args.rule, args.t, args.tp))
    except SymTCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDING
    return EXIT_OK


def cmd_dmap(args) -> int:
    _write(args.out, dfield.d_map(args.rule, args.n).to_text())
    return EXIT_OK


def cmd_render(args) -> int:
    data = dfield.render_ppm(dfield.d_map(args.rule, args.n))
    if args.out is None or args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
    return EXIT_OK


def cmd_verify(args) -> int:
    m = dfield.d_map(args.rule, args.n)
    violations = dfield.check_identities(m)
    for v in violations:
        print(v.kind, v.vertices[0], v.vertices[1], v.detail)

    inside = list(m.in_domain())
    rng = np.random.default_rng(args.seed)
    picks = rng.choice(len(inside), size=min(SYMMETRY_SAMPLES, len(inside)), replace=False)
    asym = 0
    for k in sorted(picks):
        i, j = inside[k]
        gap = check_symmetry(args.rule, (i / args.n) % 1.0, (j / args.n) % 1.0)
        if gap > SYMMETRY_TOL:
            asym += 1
            print("reversal", (i, j), fmt(gap))
    total = len(violations) + asym
    print("violations", total)
    return EXIT_OK if total == 0 else EXIT_FINDING


def cmd_coverage(args) -> int:
    margin, (i, j) = dfield.coverage_check(args.n)
    print("min_margin", fmt(margin))
    print("worst_vertex", i, j)
    return EXIT_OK if margin > 0 else EXIT_FINDING


def cmd_validate(args) -> int:
    try:
        cover, _ = coverfile.DiscreteCover.from_text(Path(args.cover).read_text())
    except (OSError, CoverFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result = coverfile.validate(cover, args.model)
    if result.ok:
        print("VALID")
        sys.stdout.write(cover.to_text(result.labels))
        return EXIT_OK
    print("INVALID")
    for v in result.violations:
        print(v)
    return EXIT_FINDING


def _report(outcome: SearchOutcome, k: int) -> int:
    print(outcome.status.upper())
    if outcome.sat:
        sys.stdout.write(outcome.witness.to_text(outcome.labels))
    if outcome.status == BUDGET:
        print("frontier", " ".join(str(m) for m in outcome.frontier))
    print("nodes", outcome.nodes)
    return EXIT_FINDING if outcome.sat and k <= 2 else EXIT_OK


def cmd_search(args) -> int:
    outcome = search(args.n, args.k, args.mode, args.budget, args.model)
    return _report(outcome, args.k)


def cmd_mink(args) -> int:
    result = min_k(args.n, args.maxk, args.budget, args.mode, args.model)
    for k, outcome in result.outcomes:
        print("k", k, outcome.status.upper(), "nodes", outcome.nodes, "via", outcome.source)
    for k, outcome in result.outcomes:
        if outcome.sat and k <= 2:
            sys.stdout.write(outcome.witness.to_text(outcome.labels))
    if result.value is None:
        print("min_k none")
    else:
        print("min_k", result.value if result.certified else f"<={result.value}")
    return EXIT_FINDING if result.value is not None and result.value <= 2 else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtc", description="Symmetric motion planning rules on the circle."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="print the path a rule picks")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--from", dest="start", type=_real, required=True, help="turns")
    p.add_argument("--to", dest="end", type=_real, required=True, help="turns")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("d", help="d-value at a point of the unit square")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--t", type=_real, required=True)
    p.add_argument("--tp", type=_real, required=True)
    p.set_defaults(func=cmd_d)

    for name, func, what in (
        ("dmap", cmd_dmap, "write the d-map text dump"),
        ("render", cmd_render, "write the d-map as a P3 image"),
    ):
        p = sub.add_parser(name, help=what)
        p.add_argument("--rule", type=_rule, required=True)
        p.add_argument("--n", type=_grid_order, required=True)
        p.add_argument("--out", default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check the d-map identities and reversal symmetry")
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--n", type=_grid_order, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coverage", help="smallest best-rule margin on a grid")
    p.add_argument("--n", type=_grid_order, required=True)
    p.set_defaults(func=cmd_coverage)

    model = dict(choices=coverfile.MODELS, default=coverfile.OPEN)
    p = sub.add_parser("validate", help="check a cover file")
    p.add_argument("--cover", required=True)
    p.add_argument("--model", **model)
    p.set_defaults(func=cmd_validate)

    modes = dict(choices=(EXHAUSTIVE, BACKTRACKING))
    p = sub.add_parser("search", help="search for a labelled k-color cover")
    p.add_argument("--n", type=_grid_order, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--mode", default=BACKTRACKING, **modes)
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--model", **model)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("mink", help="smallest k with a labelled cover")
    p.add_argument("--n", type=_grid_order, required=True)
    p.add_argument("--maxk", type=_positive, required=True)
    p.add_argument("--mode", default=BACKTRACKING, **modes)
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--model", **model)
    p.set_defaults(func=cmd_mink)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
