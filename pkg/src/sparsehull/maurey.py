"""Randomized baseline: i.i.d. sampling from the certificate weights.

Averaging k independent draws from the weight distribution approximates
the target at the k^(-1/q) rate (q the dual exponent, capped at 2), but
only in expectation; individual trials may exceed it. The report therefore
keeps the full per-trial error distribution and leaves summarizing to the
caller.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MissingWeights
from .geometry import SpaceSpec, lp_norm
from .points import ConvexTarget, PointSet

GENERATOR_NAME = "numpy-pcg64"
MAX_SEED = 2**64 - 1


@dataclass
class SamplingReport:
    """Trial errors per sample count, reproducible from the seed.

    ``generator`` names the bit-stream algorithm; reports are comparable
    across implementations only when it matches.
    """

    k_values: list[int]
    per_k_errors: list[np.ndarray]
    seed: int
    trials: int
    generator: str = field(default=GENERATOR_NAME)


def _trial_generator(seed: int, k: int, trial: int) -> np.random.Generator:
    # Sub-seed is a pure function of (seed, k, trial), so trials are
    # schedule-independent and may run in any order.
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, k, trial])))


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not (0 <= seed <= MAX_SEED):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def maurey_sample(
    point_set: PointSet,
    target: ConvexTarget,
    space: SpaceSpec,
    k_values,
    trials: int,
    seed: int,
) -> SamplingReport:
    """Monte Carlo errors ||a - mean of k draws||_p for each k and trial.

    Draws invert the cumulative weights over ascending indices, making
    each trial a pure function of (seed, weights). Raises MissingWeights
    when the target carries no certificate.
    """
    if target.weights is None:
        raise MissingWeights("sampling needs certificate weights on the target")
    target.validate(point_set)
    seed = check_seed(seed)
    k_values = [int(k) for k in k_values]
    if not k_values or any(k < 1 for k in k_values):
        raise ValueError(f"k_values must be positive, got {k_values}")
    if sorted(k_values) != k_values:
        raise ValueError(f"k_values must be ascending, got {k_values}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    cumulative = np.cumsum(target.weights)
    last = len(point_set) - 1
    pts = point_set.points
    per_k = []
    for k in k_values:
        errors = np.empty(trials)
        for t in range(trials):
            gen = _trial_generator(seed, k, t)
            draws = np.searchsorted(cumulative, gen.random(k), side="right")
            sampled = pts[np.minimum(draws, last)].mean(axis=0)
            errors[t] = lp_norm(target.a - sampled, space)
        per_k.append(errors)
    return SamplingReport(
        k_values=k_values, per_k_errors=per_k, seed=seed, trials=trials
    )


def summarize(report: SamplingReport):
    """Per-k (median, mean, max), median of an even count being the
    lower-middle order statistic."""
    rows = []
    for k, errors in zip(report.k_values, report.per_k_errors):
        ordered = np.sort(errors)
        median = float(ordered[(len(ordered) - 1) // 2])
        rows.append((k, median, float(errors.mean()), float(errors.max())))
    return rows
