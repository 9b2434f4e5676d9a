"""Command-line front end.

Exit codes: 0 success, 1 input or usage error, 2 hull-membership violation
(the separation certificate is printed as JSON on stdout).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import InputFileError, MembershipViolated, SparseHullError
from .geometry import SpaceSpec
from .greedy import (
    DEFAULT_BOUND_CONSTANT,
    colorful_greedy_run,
    greedy_run,
    required_k,
    theoretical_bound,
)
from .harness import ExperimentConfig, rows_to_csv, run_convergence
from .instances import ORACLE_MAX_POINTS, exact_k_hull_distance, lower_bound_instance
from .maurey import check_seed, maurey_sample, summarize
from .points import ConvexTarget, PointSet, weighted_mean_target

WEIGHTS_SUM_FILE_TOL = 1e-8
TRACE_HEADER = "k,chosen_index,residual_norm,bound"
MAUREY_HEADER = "k,median,mean,max"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # membership violations, so route usage errors to exit 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_rows(path):
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            cells = [c.strip() for c in line.split(",")]
            try:
                values = [float(c) for c in cells]
            except ValueError:
                raise InputFileError(path, lineno, f"not a decimal row: {line!r}")
            if not all(math.isfinite(v) for v in values):
                raise InputFileError(path, lineno, "values must be finite")
            rows.append((lineno, values))
    if not rows:
        raise InputFileError(path, 1, "no data rows")
    return rows


def load_points(path) -> PointSet:
    """CSV with one point per row; '#' lines are ignored."""
    rows = _parse_rows(path)
    width = len(rows[0][1])
    for lineno, values in rows:
        if len(values) != width:
            raise InputFileError(
                path, lineno, f"expected {width} columns, got {len(values)}"
            )
    return PointSet([values for _, values in rows])


def load_target(path) -> np.ndarray:
    rows = _parse_rows(path)
    if len(rows) != 1:
        raise InputFileError(path, rows[1][0], "target file must hold exactly one row")
    return np.asarray(rows[0][1])


def load_weights(path, n_points: int) -> np.ndarray:
    """Single nonnegative column summing to 1 within 1e-8 (renormalized)."""
    rows = _parse_rows(path)
    for lineno, values in rows:
        if len(values) != 1:
            raise InputFileError(path, lineno, "weights file must have one column")
        if values[0] < 0.0:
            raise InputFileError(path, lineno, "weights must be nonnegative")
    w = np.array([values[0] for _, values in rows])
    if len(w) != n_points:
        raise InputFileError(path, 1, f"{len(w)} weights for {n_points} points")
    total = float(w.sum())
    if abs(total - 1.0) > WEIGHTS_SUM_FILE_TOL:
        raise InputFileError(path, 1, f"weights sum to {total!r}, not 1")
    return w / total


def _smooth_p(value: str) -> float:
    p = float(value)
    if not (1.0 < p < math.inf):
        raise argparse.ArgumentTypeError(
            f"NonSmoothExponent: p={value} (need 1 < p < inf)"
        )
    return p


def _seed(value: str) -> int:
    try:
        return check_seed(int(value))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _trace_csv(trace) -> str:
    lines = [TRACE_HEADER]
    for i, idx in enumerate(trace.chosen):
        lines.append(
            f"{i + 1},{idx},{_fmt(trace.residual_norms[i])},{_fmt(trace.bounds[i])}"
        )
    return "\n".join(lines) + "\n"


def _trace_json(trace) -> str:
    return json.dumps(
        {
            "p": trace.space.p,
            "dim": trace.space.dim,
            "diam": trace.diam,
            "constant_C": trace.constant,
            "chosen": trace.chosen,
            "residual_norms": [float(v) for v in trace.residual_norms],
            "bounds": [float(v) for v in trace.bounds],
        },
        indent=2,
    ) + "\n"


def _emit_trace(trace, args) -> int:
    text = _trace_json(trace) if args.json else _trace_csv(trace)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        final = trace.residual_norms[-1]
        print(f"k={len(trace)} residual={_fmt(final)} bound={_fmt(trace.bounds[-1])}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_solve(args) -> int:
    point_set = load_points(args.points)
    space = SpaceSpec(args.p, point_set.dim)
    if args.weights:
        target = weighted_mean_target(point_set, load_weights(args.weights, len(point_set)))
    else:
        target = ConvexTarget(load_target(args.target))
    trace = greedy_run(point_set, target, space, args.k)
    return _emit_trace(trace, args)


def cmd_colorful(args) -> int:
    sets = [load_points(path) for path in args.sets]
    space = SpaceSpec(args.p, sets[0].dim)
    target = ConvexTarget(load_target(args.target))
    trace = colorful_greedy_run(sets, [target] * len(sets), space, args.k)
    return _emit_trace(trace, args)


def cmd_maurey(args) -> int:
    point_set = load_points(args.points)
    space = SpaceSpec(args.p, point_set.dim)
    target = weighted_mean_target(point_set, load_weights(args.weights, len(point_set)))
    k_values = []
    k = 1
    while k <= args.kmax:
        k_values.append(k)
        k *= 2
    report = maurey_sample(point_set, target, space, k_values, args.trials, args.seed)
    lines = [MAUREY_HEADER]
    for k, median, mean, biggest in summarize(report):
        lines.append(f"{k},{_fmt(median)},{_fmt(mean)},{_fmt(biggest)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_lowerbound(args) -> int:
    instance = lower_bound_instance(args.k)
    space = SpaceSpec(args.p, instance.n)
    formula = (2.0 * args.k) ** (1.0 / args.p - 1.0)
    floor = 0.25 * args.k ** (1.0 / args.p - 1.0)
    print(f"k={args.k}")
    print(f"n={instance.n}")
    if instance.n <= ORACLE_MAX_POINTS and args.k <= 2:
        dist = exact_k_hull_distance(
            instance.point_set, instance.target.a, space, args.k
        )
        print(f"oracle_distance={_fmt(dist)}")
    else:
        print("oracle_distance=skipped (conjectured value only for k > 2)")
    print(f"formula_value={_fmt(formula)}")
    print(f"paper_floor={_fmt(floor)}")
    return 0


def cmd_bound(args) -> int:
    space = SpaceSpec(args.p, 1)
    if args.eps is not None:
        print(f"required_k={required_k(space, args.diam, args.eps)}")
    else:
        print(f"bound={_fmt(theoretical_bound(space, args.k, args.diam))}")
    return 0


def cmd_compare(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputFileError(args.config, exc.lineno, exc.msg)
    try:
        config = ExperimentConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise InputFileError(args.config, 1, str(exc))
    csv_text = rows_to_csv(run_convergence(config))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sparsehull",
        description="Greedy sparse convex-combination approximation in l_p spaces.",
    )
    parser.add_argument("--version", action="version", version=f"sparsehull {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="greedy run on one point set")
    solve.add_argument("--points", required=True, help="CSV, one point per row")
    solve.add_argument("--p", type=_smooth_p, required=True)
    solve.add_argument("--k", type=int, required=True, help="number of greedy steps")
    which = solve.add_mutually_exclusive_group(required=True)
    which.add_argument("--target", help="CSV with the target point (taken on faith)")
    which.add_argument("--weights", help="CSV weight column; target is the weighted mean")
    solve.add_argument("--trace", help="write the trace here instead of stdout")
    solve.add_argument("--json", action="store_true", help="JSON trace instead of CSV")
    solve.set_defaults(func=cmd_solve)

    colorful = sub.add_parser(
        "colorful",
        help="transversal greedy run; step i draws from set i, cycling the files",
    )
    colorful.add_argument("--sets", nargs="+", required=True, help="one CSV per set")
    colorful.add_argument("--target", required=True)
    colorful.add_argument("--p", type=_smooth_p, required=True)
    colorful.add_argument("--k", type=int, required=True)
    colorful.add_argument("--trace")
    colorful.add_argument("--json", action="store_true")
    colorful.set_defaults(func=cmd_colorful)

    maurey = sub.add_parser("maurey", help="random-sampling baseline statistics")
    maurey.add_argument("--points", required=True)
    maurey.add_argument("--weights", required=True)
    maurey.add_argument("--p", type=_smooth_p, required=True)
    maurey.add_argument("--kmax", type=int, required=True)
    maurey.add_argument("--trials", type=int, default=100)
    maurey.add_argument("--seed", type=_seed, default=0, help="unsigned 64-bit decimal")
    maurey.set_defaults(func=cmd_maurey)

    lower = sub.add_parser("lowerbound", help="tight-instance distance report")
    lower.add_argument("--k", type=int, required=True)
    lower.add_argument("--p", type=_smooth_p, required=True)
    lower.set_defaults(func=cmd_lowerbound)

    bound = sub.add_parser("bound", help="theoretical bound or required k")
    bound.add_argument("--p", type=_smooth_p, required=True)
    bound.add_argument("--diam", type=float, required=True)
    which = bound.add_mutually_exclusive_group(required=True)
    which.add_argument("--eps", type=float)
    which.add_argument("--k", type=int)
    bound.set_defaults(func=cmd_bound)

    compare = sub.add_parser("compare", help="convergence experiment from a JSON config")
    compare.add_argument("--config", required=True)
    compare.add_argument("--out", help="write the CSV here instead of stdout")
    compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MembershipViolated as exc:
        print(
            json.dumps(
                {
                    "error": "MembershipViolated",
                    "step": exc.step,
                    "set_index": exc.set_index,
                    "margin": exc.margin,
                    "functional": [float(v) for v in exc.functional],
                }
            )
        )
        return 2
    except SparseHullError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, OverflowError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
