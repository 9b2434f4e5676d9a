"""Norms, norming functionals, and the modulus of smoothness for l_p spaces.

For 1 < p < inf the space l_p^d is uniformly smooth with modulus

    rho_p(t) = ((1+t)^p + |1-t|^p) / 2)^(1/p) - 1     for p >= 2,
    rho_p(t) = (1 + t^p)^(1/p) - 1                     for 1 < p <= 2,

both of which dominate the Hilbert modulus sqrt(1+t^2) - 1. The |1-t|
even extension keeps the p >= 2 formula defined on all of [0, inf),
which the solver needs since it evaluates rho at arguments up to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatch,
    NonSmoothExponent,
    PreconditionViolated,
    ToleranceNotReached,
)

UNIT_NORM_TOL = 1e-12
PAIRING_TOL = 1e-9


@dataclass(frozen=True)
class SpaceSpec:
    """The exponent p and dimension of the ambient l_p space.

    p may be any real in [1, inf]; use ``math.inf`` for the max norm.
    """

    p: float
    dim: int

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise ValueError(f"p must be >= 1 or inf, got {self.p}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")

    @property
    def is_uniformly_smooth(self) -> bool:
        return 1.0 < self.p < math.inf

    @property
    def dual_exponent(self) -> float:
        """q with 1/p + 1/q = 1."""
        if self.p == 1.0:
            return math.inf
        if self.p == math.inf:
            return 1.0
        return self.p / (self.p - 1.0)


def _as_vector(x, space: SpaceSpec):
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != space.dim:
        raise DimensionMismatch(
            f"expected a vector of dimension {space.dim}, got shape {arr.shape}"
        )
    return arr


def _require_smooth(space_or_p):
    p = space_or_p.p if isinstance(space_or_p, SpaceSpec) else space_or_p
    if not (1.0 < p < math.inf):
        raise NonSmoothExponent(
            f"p={p}: need 1 < p < inf (duality map is set-valued at p=1 and p=inf)"
        )
    return p


def lp_norm(x, space: SpaceSpec) -> float:
    """(sum |x_i|^p)^(1/p) for finite p, max |x_i| for p = inf."""
    arr = _as_vector(x, space)
    if space.p == math.inf:
        return float(np.abs(arr).max())
    return _kernels.vector_norm(arr, space.p)


def norming_functional(u, space: SpaceSpec):
    """The functional u* with <u*, u> = ||u||_p and ||u*||_q = 1.

    Components are sign(u_i) |u_i|^(p-1) / ||u||_p^(p-1); by convention
    u* = 0 for u = 0. Only defined for 1 < p < inf.
    """
    p = _require_smooth(space)
    arr = _as_vector(u, space)
    if not arr.any():
        return np.zeros(space.dim)
    return np.asarray(_kernels.norming_direction(arr, p))


@dataclass(frozen=True)
class ModulusProfile:
    """Modulus of smoothness of l_p for one exponent 1 < p < inf."""

    p: float

    def __post_init__(self):
        _require_smooth(self.p)

    def value(self, t: float) -> float:
        """rho_p(t) for t >= 0; zero at zero, strictly increasing, convex."""
        if t < 0:
            raise ValueError(f"modulus argument must be >= 0, got {t}")
        if t == 0.0:
            return 0.0
        p = self.p
        if p <= 2.0:
            return (1.0 + t**p) ** (1.0 / p) - 1.0
        return (((1.0 + t) ** p + abs(1.0 - t) ** p) / 2.0) ** (1.0 / p) - 1.0

    def inverse(self, y: float, tol: float = 1e-12) -> float:
        """The unique t >= 0 with rho_p(t) = y, by bracketing bisection.

        Succeeds when |rho_p(t) - y| <= tol, with tol read as relative
        once y exceeds 1. Raises ToleranceNotReached after 200 iterations.
        """
        if y < 0:
            raise ValueError(f"modulus values are >= 0, got {y}")
        if tol <= 0:
            raise ValueError("tol must be positive")
        if y == 0.0:
            return 0.0
        goal = tol * max(1.0, abs(y))
        # The Hilbert modulus minorizes rho_p (Day-Nordlander), so its
        # inverse sqrt(2y + y^2) brackets the root from above; the doubling
        # loop is a guard only.
        hi = max(1.0, 2.0 * math.sqrt(2.0 * y + y * y))
        while self.value(hi) < y:
            hi *= 2.0
        lo = 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            val = self.value(mid)
            if abs(val - y) <= goal:
                return mid
            if mid == lo or mid == hi:
                break
            if val < y:
                lo = mid
            else:
                hi = mid
        raise ToleranceNotReached(
            f"inverse modulus did not reach tol={tol} for p={self.p}, y={y}"
        )


@lru_cache(maxsize=None)
def _eta_cached(p: float, k: int) -> float:
    return 1.0 / ModulusProfile(p).inverse(1.0 / k)


def eta(space: SpaceSpec, k: int) -> float:
    """1 / rho_p^{-1}(1/k), the per-step growth budget of the greedy proof.

    At least 1 for every k >= 3.
    """
    _require_smooth(space)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _eta_cached(space.p, k)


def supporting_deviation_bound(u, x, space: SpaceSpec):
    """Evaluate both sides of the supporting-hyperplane deviation inequality.

    For a unit vector u and any x pairing non-positively against u*, the
    norm ||u + x|| is bounded by 2 rho_p(||x||) + 1. Returns the pair
    (||u + x||, 2 rho_p(||x||) + 1); callers assert lhs <= rhs.
    """
    p = _require_smooth(space)
    uv = _as_vector(u, space)
    xv = _as_vector(x, space)
    norm_u = lp_norm(uv, space)
    if abs(norm_u - 1.0) > UNIT_NORM_TOL:
        raise PreconditionViolated(f"u must be a unit vector, got ||u|| = {norm_u!r}")
    pairing = float(norming_functional(uv, space) @ xv)
    if pairing > PAIRING_TOL:
        raise PreconditionViolated(
            f"<u*, x> must be <= 0, got {pairing!r}"
        )
    lhs = lp_norm(uv + xv, space)
    rhs = 2.0 * ModulusProfile(p).value(lp_norm(xv, space)) + 1.0
    return lhs, rhs
