"""Convergence experiments: greedy error vs theoretical bound vs sampling.

Each (p, dim, n) cell gets one random instance, a greedy run to K_max, and
a sampling report at powers of two; rows land in a CSV whose bound_ratio
column is the direct desk-scale check of the main error bound. Sample
counts stay on powers of two so log-log fits are well conditioned, and the
sampling column reports the median, which is robust to the one-sided heavy
tail of trial errors.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, fields

import numpy as np

from .errors import DegenerateFit
from .geometry import SpaceSpec
from .greedy import DEFAULT_BOUND_CONSTANT, greedy_run
from .instances import random_instance
from .maurey import maurey_sample, summarize

CSV_HEADER = "p,dim,n,k,greedy_error,bound,bound_ratio,maurey_median_error"


@dataclass
class ExperimentConfig:
    p_grid: list[float]
    dims: list[int]
    n_points: list[int]
    K_max: int
    trials: int
    seed: int
    constant_C: float = DEFAULT_BOUND_CONSTANT

    def __post_init__(self):
        if not self.p_grid or not self.dims or not self.n_points:
            raise ValueError("p_grid, dims and n_points must be nonempty")
        if self.K_max < 1:
            raise ValueError(f"K_max must be >= 1, got {self.K_max}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class ConvergenceRow:
    p: float
    dim: int
    n: int
    k: int
    greedy_error: float
    bound: float
    bound_ratio: float
    maurey_median_error: float


def _powers_of_two(limit: int) -> list[int]:
    ks = []
    k = 1
    while k <= limit:
        ks.append(k)
        k *= 2
    return ks


def _sub_seed(*entropy: int) -> int:
    return int(np.random.SeedSequence(list(entropy)).generate_state(1, np.uint64)[0])


def run_convergence(config: ExperimentConfig) -> list[ConvergenceRow]:
    """All cells of the config grid; deterministic in config.seed.

    Cells are independent; rows come back sorted by (p, dim, n, k) so the
    output does not depend on grid order.
    """
    k_values = _powers_of_two(config.K_max)
    rows = []
    for i_p, p in enumerate(config.p_grid):
        for i_d, dim in enumerate(config.dims):
            for i_n, n in enumerate(config.n_points):
                space = SpaceSpec(p, dim)
                point_set, target = random_instance(
                    dim, n, _sub_seed(config.seed, i_p, i_d, i_n, 0), space
                )
                trace = greedy_run(
                    point_set, target, space, config.K_max, constant=config.constant_C
                )
                report = maurey_sample(
                    point_set,
                    target,
                    space,
                    k_values,
                    config.trials,
                    _sub_seed(config.seed, i_p, i_d, i_n, 1),
                )
                medians = {k: med for k, med, _, _ in summarize(report)}
                for k in k_values:
                    err = float(trace.residual_norms[k - 1])
                    bound = float(trace.bounds[k - 1])
                    rows.append(
                        ConvergenceRow(
                            p=float(p),
                            dim=int(dim),
                            n=int(n),
                            k=k,
                            greedy_error=err,
                            bound=bound,
                            bound_ratio=err / bound if bound > 0.0 else 0.0,
                            maurey_median_error=medians[k],
                        )
                    )
    rows.sort(key=lambda r: (r.p, r.dim, r.n, r.k))
    return rows


def fit_loglog_slope(k_values, values) -> float:
    """Least-squares slope of log(values) against log(k), closed form.

    Needs at least 4 distinct k with positive values; raises DegenerateFit
    otherwise.
    """
    pairs = {}
    for k, v in zip(k_values, values):
        if v > 0.0:
            pairs[int(k)] = float(v)
    if len(pairs) < 4:
        raise DegenerateFit(
            f"need >= 4 distinct k with positive values, got {len(pairs)}"
        )
    xs = np.log(np.array(sorted(pairs), dtype=np.float64))
    ys = np.log(np.array([pairs[k] for k in sorted(pairs)]))
    n = len(xs)
    denom = n * float(xs @ xs) - float(xs.sum()) ** 2
    return (n * float(xs @ ys) - float(xs.sum()) * float(ys.sum())) / denom


def fit_rate(rows, field_name: str) -> float:
    """Log-log slope of one field over k for rows of a single cell."""
    return fit_loglog_slope(
        [r.k for r in rows], [getattr(r, field_name) for r in rows]
    )


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def rows_to_csv(rows) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for r in rows:
        out.write(
            ",".join(
                _fmt(v)
                for v in (
                    r.p,
                    r.dim,
                    r.n,
                    r.k,
                    r.greedy_error,
                    r.bound,
                    r.bound_ratio,
                    r.maurey_median_error,
                )
            )
            + "\n"
        )
    return out.getvalue()
