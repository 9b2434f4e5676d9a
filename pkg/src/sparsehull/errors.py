"""Exception types shared across the package."""

from __future__ import annotations


class SparseHullError(Exception):
    """Base class for all errors raised by this library."""


class DimensionMismatch(SparseHullError):
    """Operands do not share the ambient dimension."""


class NonSmoothExponent(SparseHullError):
    """Operation requires 1 < p < inf (the duality map is not single-valued
    at p = 1 or p = inf, and the smoothness modulus degenerates there)."""


class ToleranceNotReached(SparseHullError):
    """Iterative routine hit its iteration cap before meeting the tolerance."""


class PreconditionViolated(SparseHullError):
    """A documented input contract was not met."""


class MissingWeights(SparseHullError):
    """A convex-combination certificate (weights) is required but absent."""


class InstanceTooLarge(SparseHullError):
    """Brute-force oracle refused an instance beyond its size precondition."""


class DegenerateFit(SparseHullError):
    """Too few usable points for a log-log slope fit."""


class MembershipViolated(SparseHullError):
    """The greedy step found no candidate pairing non-positively against the
    residual functional, which certifies the target lies outside the hull.

    Attributes
    ----------
    functional : ndarray
        Separating functional phi with <phi, x - a> >= margin for every
        candidate x of the offending set.
    margin : float
        The (positive) minimum pairing value.
    step : int
        1-based step index at which the violation was detected.
    set_index : int or None
        For the colorful variant, 0-based index of the offending set.
    """

    def __init__(self, message, functional, margin, step, set_index=None):
        super().__init__(message)
        self.functional = functional
        self.margin = margin
        self.step = step
        self.set_index = set_index


class InputFileError(SparseHullError):
    """Malformed input file; message carries path and 1-based line number."""

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line
