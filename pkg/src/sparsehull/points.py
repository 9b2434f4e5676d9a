"""Point families and convex-combination targets."""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, PreconditionViolated
from .geometry import SpaceSpec

WEIGHT_SUM_TOL = 1e-10
RECOMBINATION_TOL = 1e-9


class PointSet:
    """Immutable indexed family of points sharing one dimension.

    The diameter depends on the ambient exponent, so it is computed per
    space and cached on first use.
    """

    def __init__(self, points):
        arr = np.ascontiguousarray(points, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("a point set needs at least one point")
        if not np.isfinite(arr).all():
            raise ValueError("points must be finite")
        arr.setflags(write=False)
        self._points = arr
        self._diameters: dict[float, float] = {}

    @property
    def points(self):
        return self._points

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self._points.shape[0]

    def __getitem__(self, i):
        return self._points[i]

    def diameter(self, space: SpaceSpec) -> float:
        """Max pairwise l_p distance, cached per exponent."""
        if space.dim != self.dim:
            raise DimensionMismatch(
                f"space dimension {space.dim} != point dimension {self.dim}"
            )
        cached = self._diameters.get(space.p)
        if cached is not None:
            return cached
        pts = self._points
        best = 0.0
        for i in range(len(self) - 1):
            diffs = np.abs(pts[i + 1 :] - pts[i])
            if space.p == math.inf:
                val = float(diffs.max()) if diffs.size else 0.0
            else:
                scale = diffs.max(axis=1)
                scale[scale == 0.0] = 1.0
                sums = np.sum((diffs / scale[:, None]) ** space.p, axis=1)
                val = float((scale * sums ** (1.0 / space.p)).max())
            best = max(best, val)
        self._diameters[space.p] = best
        return best


class ConvexTarget:
    """Target point plus an optional convex-weight certificate.

    Weights, when present, index the companion point set; they are
    validated against it (nonnegative, sum to one, recombine to the
    target) via :meth:`validate`.
    """

    def __init__(self, a, weights=None):
        arr = np.asarray(a, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"target must be a vector, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("target must be finite")
        self.a = arr
        if weights is None:
            self.weights = None
        else:
            w = np.asarray(weights, dtype=np.float64)
            if w.ndim != 1:
                raise ValueError(f"weights must be a vector, got shape {w.shape}")
            self.weights = w

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def validate(self, point_set: PointSet) -> None:
        """Check the certificate against ``point_set``; no-op without weights."""
        if self.dim != point_set.dim:
            raise DimensionMismatch(
                f"target dimension {self.dim} != point dimension {point_set.dim}"
            )
        if self.weights is None:
            return
        w = self.weights
        if w.shape[0] != len(point_set):
            raise DimensionMismatch(
                f"{w.shape[0]} weights for {len(point_set)} points"
            )
        if (w < 0.0).any():
            raise PreconditionViolated("certificate weights must be nonnegative")
        total = float(w.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise PreconditionViolated(f"certificate weights sum to {total!r}, not 1")
        residual = np.abs(w @ point_set.points - self.a).max()
        if residual > RECOMBINATION_TOL:
            raise PreconditionViolated(
                f"certificate recombines to the target only within {residual!r}"
            )


def weighted_mean_target(point_set: PointSet, weights) -> ConvexTarget:
    """Build a target as the weighted mean of ``point_set``.

    Membership then holds by construction, so the resulting certificate
    always validates.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.shape[0] != len(point_set):
        raise DimensionMismatch(f"{w.shape} weights for {len(point_set)} points")
    return ConvexTarget(w @ point_set.points, w)
