"""Test-instance generators and a brute-force k-hull distance oracle.

The oracle enumerates every k-point subset and minimizes the distance to
the target over each subset's weight simplex, so it is exponential in the
set size by design and refuses more than 12 points. It trades speed for
being an independent ground truth on tiny instances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InstanceTooLarge
from .geometry import SpaceSpec, _require_smooth
from .maurey import check_seed
from .points import ConvexTarget, PointSet

ORACLE_MAX_POINTS = 12
ORACLE_TOL = 1e-7


@dataclass
class LowerBoundInstance:
    """Basis vectors e_1..e_n of R^n with the uniform barycenter as target.

    With n = 2k this witnesses that the k-term approximation error in l_p,
    1 < p <= 2, cannot beat k^(1/p - 1) up to a constant: any k-point
    subaverage leaves at least n - k coordinates of size 1/n unmatched.
    """

    k: int
    n: int
    point_set: PointSet
    target: ConvexTarget


def lower_bound_instance(k: int) -> LowerBoundInstance:
    """The tight instance for sample count k: 2k basis vectors in R^(2k)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = 2 * k
    return LowerBoundInstance(
        k=k,
        n=n,
        point_set=PointSet(np.eye(n)),
        target=ConvexTarget(np.full(n, 1.0 / n), np.full(n, 1.0 / n)),
    )


def _row_norms(rows, p):
    if p == math.inf:
        return np.abs(rows).max(axis=1)
    scale = np.abs(rows).max(axis=1)
    out = np.zeros(rows.shape[0])
    nz = scale > 0.0
    if nz.any():
        scaled = np.abs(rows[nz]) / scale[nz, None]
        out[nz] = scale[nz] * np.sum(scaled**p, axis=1) ** (1.0 / p)
    return out


def _best_on_grid(a, pts, p, grids):
    # grids: one coordinate grid per free barycentric coordinate.
    mesh = np.meshgrid(*grids, indexing="ij")
    free = np.stack([m.ravel() for m in mesh], axis=1)
    last = 1.0 - free.sum(axis=1)
    keep = last >= -1e-12
    free, last = free[keep], np.maximum(last[keep], 0.0)
    weights = np.hstack([free, last[:, None]])
    dists = _row_norms(a - weights @ pts, p)
    i = int(np.argmin(dists))
    return float(dists[i]), free[i]


def _min_dist_grid(a, pts, p, resolution=32):
    # Exhaustive refinement over the simplex, for 2 or 3 points. The box
    # of free coordinates shrinks by 4/resolution per round, so ~12 rounds
    # pin the minimizer far below ORACLE_TOL.
    m = pts.shape[0] - 1
    lo = np.zeros(m)
    hi = np.ones(m)
    best = math.inf
    while True:
        grids = [np.linspace(lo[j], hi[j], resolution + 1) for j in range(m)]
        val, at = _best_on_grid(a, pts, p, grids)
        best = min(best, val)
        width = float((hi - lo).max())
        if width <= 1e-10:
            return best
        half = 2.0 * width / resolution
        lo = np.maximum(at - half, 0.0)
        hi = np.minimum(at + half, 1.0)


def _project_simplex(z):
    ordered = np.sort(z)[::-1]
    cumulative = np.cumsum(ordered) - 1.0
    ranks = np.arange(1, len(z) + 1)
    rho = np.nonzero(ordered - cumulative / ranks > 0)[0][-1]
    theta = cumulative[rho] / (rho + 1.0)
    return np.maximum(z - theta, 0.0)


def _min_dist_projected_gradient(a, pts, p, iterations=500):
    # Uniform start, Euclidean projection back to the simplex, step halving.
    # Needs the single-valued duality map, hence 1 < p < inf.
    _require_smooth(p)
    m = pts.shape[0]
    weights = np.full(m, 1.0 / m)
    value = _kernels.vector_norm(a - weights @ pts, p)
    step = 1.0
    for _ in range(iterations):
        residual = a - weights @ pts
        if value == 0.0:
            break
        gradient = -pts @ _kernels.norming_direction(residual, p)
        improved = False
        while step > 1e-14:
            candidate = _project_simplex(weights - step * gradient)
            cand_value = _kernels.vector_norm(a - candidate @ pts, p)
            if cand_value < value:
                weights, value = candidate, cand_value
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        step *= 2.0
    return value


def exact_k_hull_distance(point_set: PointSet, a, space: SpaceSpec, k: int) -> float:
    """dist(a, conv_k S): minimum over all k-point subsets of the distance
    from a to the subset's convex hull, to about ORACLE_TOL."""
    n = len(point_set)
    if n > ORACLE_MAX_POINTS:
        raise InstanceTooLarge(
            f"oracle handles at most {ORACLE_MAX_POINTS} points, got {n}"
        )
    if not (1 <= k <= n):
        raise ValueError(f"k must be in [1, {n}], got {k}")
    a = np.asarray(a, dtype=np.float64)
    pts = point_set.points
    p = space.p
    best = math.inf
    for subset in itertools.combinations(range(n), k):
        sub = pts[list(subset)]
        if k == 1:
            val = float(_row_norms(a[None, :] - sub, p)[0])
        elif k <= 3:
            val = _min_dist_grid(a, sub, p)
        else:
            val = _min_dist_projected_gradient(a, sub, p)
        best = min(best, val)
    return best


def random_instance(dim: int, n_points: int, seed: int, space: SpaceSpec):
    """Random points in the unit l_p ball plus a random convex combination.

    Points come from the exact in-ball sampler (generalized-Gaussian
    direction with an extra exponential in the normalization), weights
    from normalized exponentials, and the target is their weighted mean,
    so the certificate validates by construction. Deterministic in seed.
    """
    if dim < 1 or n_points < 1:
        raise ValueError(f"need dim >= 1 and n_points >= 1, got {dim}, {n_points}")
    if dim != space.dim:
        raise ValueError(f"dim {dim} != space dimension {space.dim}")
    gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(check_seed(seed))))
    if space.p == math.inf:
        pts = gen.uniform(-1.0, 1.0, size=(n_points, dim))
    else:
        p = space.p
        radial = gen.gamma(1.0 / p, size=(n_points, dim))
        signs = gen.integers(0, 2, size=(n_points, dim)) * 2 - 1
        slack = gen.standard_exponential(n_points)
        scale = (radial.sum(axis=1) + slack) ** (1.0 / p)
        pts = signs * radial ** (1.0 / p) / scale[:, None]
    weights = gen.standard_exponential(n_points)
    weights /= weights.sum()
    point_set = PointSet(pts)
    return point_set, ConvexTarget(weights @ pts, weights)
