"""Sparse convex-combination approximation in finite-dimensional l_p spaces.

A point of the convex hull of a bounded set can be approximated by the
average of k greedily chosen points, with an error controlled by the
modulus of smoothness of the ambient norm. This package implements the
greedy solver and its transversal (colorful) variant, the modulus
machinery behind the bound, a randomized sampling baseline, tight
lower-bound instances with a brute-force oracle, and an experiment
harness; ``sparsehull`` on the command line fronts all of it.
"""

from ._kernels import BACKEND
from .errors import (
    DegenerateFit,
    DimensionMismatch,
    InputFileError,
    InstanceTooLarge,
    MembershipViolated,
    MissingWeights,
    NonSmoothExponent,
    PreconditionViolated,
    SparseHullError,
    ToleranceNotReached,
)
from .geometry import (
    ModulusProfile,
    SpaceSpec,
    eta,
    lp_norm,
    norming_functional,
    supporting_deviation_bound,
)
from .greedy import (
    DEFAULT_BOUND_CONSTANT,
    MEMBERSHIP_TOL,
    GreedyTrace,
    colorful_greedy_run,
    greedy_run,
    greedy_step,
    required_k,
    theoretical_bound,
)
from .harness import (
    ConvergenceRow,
    ExperimentConfig,
    fit_loglog_slope,
    fit_rate,
    rows_to_csv,
    run_convergence,
)
from .instances import (
    LowerBoundInstance,
    exact_k_hull_distance,
    lower_bound_instance,
    random_instance,
)
from .maurey import SamplingReport, maurey_sample, summarize
from .points import ConvexTarget, PointSet, weighted_mean_target

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_BOUND_CONSTANT",
    "MEMBERSHIP_TOL",
    "ConvergenceRow",
    "ConvexTarget",
    "DegenerateFit",
    "DimensionMismatch",
    "ExperimentConfig",
    "GreedyTrace",
    "InputFileError",
    "InstanceTooLarge",
    "LowerBoundInstance",
    "MembershipViolated",
    "MissingWeights",
    "ModulusProfile",
    "NonSmoothExponent",
    "PointSet",
    "PreconditionViolated",
    "SamplingReport",
    "SparseHullError",
    "SpaceSpec",
    "ToleranceNotReached",
    "colorful_greedy_run",
    "eta",
    "exact_k_hull_distance",
    "fit_loglog_slope",
    "fit_rate",
    "greedy_run",
    "greedy_step",
    "lower_bound_instance",
    "lp_norm",
    "maurey_sample",
    "norming_functional",
    "random_instance",
    "required_k",
    "rows_to_csv",
    "run_convergence",
    "summarize",
    "supporting_deviation_bound",
    "theoretical_bound",
    "weighted_mean_target",
]
