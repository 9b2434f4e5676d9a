"""Greedy sparse approximation of a point in a convex hull.

Each step pairs every candidate against the norming functional of the
running residual and takes the most negative pairing; averaging the first
k picks approximates the target at a rate governed by the modulus of
smoothness of the ambient l_p space:

    ||a - a_k|| <= C * diam(S) / (k * rho_p^{-1}(1/k)),    C = 2 e^2.

The constant compounds the two ingredients of the convergence argument, a
detour budget of 2 eta_k for the partial sums and a per-step growth factor
(1 + 2/k) applied at most k times, hence (1 + 2/k)^k <= e^2. A strictly
positive minimum pairing is impossible when the target lies in the hull,
so it is reported as a separation certificate instead of a step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, MembershipViolated
from .geometry import SpaceSpec, _require_smooth, eta, norming_functional
from .points import ConvexTarget, PointSet

DEFAULT_BOUND_CONSTANT = 2.0 * math.e**2
MEMBERSHIP_TOL = 1e-9
MAX_REQUIRED_K = 2**62


@dataclass
class GreedyTrace:
    """Per-step record of a greedy run.

    chosen[k], iterates[k], residual_norms[k] and bounds[k] describe the
    state after step k+1: the picked index, the running average a_{k+1}
    in original coordinates, ||a - a_{k+1}||_p, and the theoretical bound
    at k+1.
    """

    chosen: list[int]
    iterates: np.ndarray
    residual_norms: np.ndarray
    bounds: np.ndarray
    space: SpaceSpec
    diam: float
    constant: float

    def __len__(self) -> int:
        return len(self.chosen)


def greedy_step(residual_sum, candidates: PointSet, space: SpaceSpec):
    """One selection step over recentered candidates.

    ``residual_sum`` is the running sum of previously chosen points, in
    coordinates where the target is the origin. Returns (index, pairing)
    of the candidate minimizing <u*, x>, ties to the lowest index; a zero
    residual returns (0, 0.0).
    """
    p = _require_smooth(space)
    u = np.asarray(residual_sum, dtype=np.float64)
    if u.shape != (space.dim,) or candidates.dim != space.dim:
        raise DimensionMismatch(
            f"residual {u.shape}, candidates dim {candidates.dim}, space dim {space.dim}"
        )
    if not u.any():
        return 0, 0.0
    idx, val = _kernels.min_pairing(candidates.points, _kernels.norming_direction(u, p))
    return int(idx), float(val)


def _bounds_for(space: SpaceSpec, K: int, diam: float, constant: float):
    ks = np.arange(1, K + 1)
    etas = np.array([eta(space, int(k)) for k in ks])
    return constant * diam * etas / ks


def _certificate(u_prev, space, margin, step, set_index=None):
    functional = norming_functional(u_prev, space)
    where = f" (set {set_index})" if set_index is not None else ""
    return MembershipViolated(
        f"no candidate pairs non-positively at step {step}{where}: "
        f"min pairing {margin:.3e} > {MEMBERSHIP_TOL}; "
        "the functional separates the target from the set",
        functional=functional,
        margin=margin,
        step=step,
        set_index=set_index,
    )


def greedy_run(
    point_set: PointSet,
    target: ConvexTarget,
    space: SpaceSpec,
    K: int,
    constant: float = DEFAULT_BOUND_CONSTANT,
) -> GreedyTrace:
    """Run K greedy steps on one point set.

    The certificate on ``target`` is validated when present. Raises
    MembershipViolated with a separating functional if some step finds
    only positive pairings beyond the membership tolerance.
    """
    _require_smooth(space)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if point_set.dim != space.dim:
        raise DimensionMismatch(
            f"points have dimension {point_set.dim}, space {space.dim}"
        )
    target.validate(point_set)

    recentered = np.ascontiguousarray(point_set.points - target.a)
    chosen = np.zeros(K, dtype=np.int64)
    usums = np.zeros((K, space.dim))
    unorms = np.zeros(K)
    status, step, _, margin = _kernels.greedy_iterate_into(
        recentered, space.p, K, MEMBERSHIP_TOL, chosen, usums, unorms
    )
    if status != 0:
        raise _certificate(usums[step - 1], space, margin, step + 1)

    ks = np.arange(1, K + 1, dtype=np.float64)
    diam = point_set.diameter(space)
    return GreedyTrace(
        chosen=[int(i) for i in chosen],
        iterates=target.a + usums / ks[:, None],
        residual_norms=unorms / ks,
        bounds=_bounds_for(space, K, diam, constant),
        space=space,
        diam=diam,
        constant=constant,
    )


def colorful_greedy_run(
    sets: Sequence[PointSet],
    targets,
    space: SpaceSpec,
    K: int,
    constant: float = DEFAULT_BOUND_CONSTANT,
) -> GreedyTrace:
    """Transversal variant: step k draws its candidate from sets[k-1].

    ``targets`` is one ConvexTarget shared by all sets, or one per set
    with identical target points (certificates are validated per set).
    A finite family is cycled when K exceeds its length, and the bound
    uses the largest diameter among the sets actually consumed. On a
    violation the offending 0-based set index is attached.
    """
    p = _require_smooth(space)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    sets = list(sets)
    if not sets:
        raise ValueError("need at least one point set")
    if isinstance(targets, ConvexTarget):
        targets = [targets] * len(sets)
    else:
        targets = list(targets)
    if len(targets) != len(sets):
        raise DimensionMismatch(f"{len(targets)} targets for {len(sets)} sets")
    a = targets[0].a
    for i, (ps, tg) in enumerate(zip(sets, targets)):
        if ps.dim != space.dim:
            raise DimensionMismatch(
                f"set {i} has dimension {ps.dim}, space {space.dim}"
            )
        if not np.array_equal(tg.a, a):
            raise ValueError(f"target of set {i} differs from the common target")
        tg.validate(ps)

    used = min(len(sets), K)
    diam = max(s.diameter(space) for s in sets[:used])
    recentered = [np.ascontiguousarray(s.points - a) for s in sets]

    u = np.zeros(space.dim)
    chosen: list[int] = []
    usums = np.zeros((K, space.dim))
    unorms = np.zeros(K)
    for k in range(K):
        set_idx = k % len(sets)
        pts = recentered[set_idx]
        if not u.any():
            idx, val = 0, 0.0
        else:
            idx, val = _kernels.min_pairing(pts, _kernels.norming_direction(u, p))
            if val > MEMBERSHIP_TOL:
                raise _certificate(u, space, val, k + 1, set_index=set_idx)
        u = u + pts[idx]
        chosen.append(int(idx))
        usums[k] = u
        unorms[k] = _kernels.vector_norm(u, p)

    ks = np.arange(1, K + 1, dtype=np.float64)
    return GreedyTrace(
        chosen=chosen,
        iterates=a + usums / ks[:, None],
        residual_norms=unorms / ks,
        bounds=_bounds_for(space, K, diam, constant),
        space=space,
        diam=diam,
        constant=constant,
    )


def theoretical_bound(
    space: SpaceSpec,
    k: int,
    diam: float,
    constant: float = DEFAULT_BOUND_CONSTANT,
) -> float:
    """C * diam / (k * rho_p^{-1}(1/k)); non-increasing in k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if diam < 0:
        raise ValueError(f"diam must be >= 0, got {diam}")
    if diam == 0.0:
        return 0.0
    return constant * diam * eta(space, k) / k


def required_k(
    space: SpaceSpec,
    diam: float,
    eps: float,
    constant: float = DEFAULT_BOUND_CONSTANT,
) -> int:
    """Smallest k whose theoretical bound is at most eps.

    Doubling then bisection on the non-increasing bound; raises
    OverflowError past 2**62. Scales as (diam/eps)^(p/(p-1)).
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if diam <= 0:
        raise ValueError(f"diam must be positive, got {diam}")
    if theoretical_bound(space, 1, diam, constant) <= eps:
        return 1
    hi = 1
    while theoretical_bound(space, hi, diam, constant) > eps:
        hi *= 2
        if hi > MAX_REQUIRED_K:
            raise OverflowError(f"required k exceeds {MAX_REQUIRED_K}")
    lo = hi // 2  # bound(lo) > eps >= bound(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if theoretical_bound(space, mid, diam, constant) > eps:
            lo = mid
        else:
            hi = mid
    return hi
