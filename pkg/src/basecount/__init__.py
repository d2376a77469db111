"""Matroid library and deterministic approximate counting engine.

Counting bases, common bases, and weighted common bases of matroids with
certified upper and lower bounds obtained from a maximum-entropy convex
program over the base polytope, plus a numerical lab that checks the
log-concavity and entropy inequalities the guarantees rest on.
"""

from .counting import (
    CountEstimate,
    count_bases,
    count_common_bases,
    count_independent_sets_of_size,
    count_weighted_common_bases,
    exact_weighted_count,
)
from .lab import (
    CampaignReport,
    DistributionTable,
    bivariate_clc,
    capacity_entropy_agreement,
    entropy_sandwich_check,
    external_field_distribution,
    hessian_signature_check,
    log_hessian_nsd_check,
    phi,
    phi_bound_check,
)
from .matroid import (
    EnumerationGuardError,
    ExplicitBasesMatroid,
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    MatroidError,
    MatroidSpecError,
    PartitionMatroid,
    UniformMatroid,
    direct_sum,
    dual,
    enumerate_bases,
    matroid_from_json,
    matroid_to_json,
    minor,
    replicate,
    truncation,
    validate_matroid,
)
from .optimize import (
    BasePolytope,
    EntropyProgram,
    InfeasibleIntersectionError,
    IntersectionPolytope,
    Point,
    SolveResult,
    greedy_max_weight_basis,
    max_weight_common_basis,
    maximize_entropy,
)
from .polynomials import (
    CapacityUnboundedError,
    EvaluatedPolynomial,
    capacity,
    evaluate_basis_polynomial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
