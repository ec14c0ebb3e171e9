"""Exact decay exponents and width orders for anisotropic smoothness classes.

The package answers two tightly coupled questions, entirely in exact
arithmetic:

  * `params` / `exponent` / `closedform`: for a smoothness profile r̄,
    integrability profile p̄ and target exponent q, what power of n governs
    the best rank-n approximation error, is the embedding compact, and
    which closed-form regime applies;
  * `finitedim` / `oracle`: the finite-dimensional counterpart, orders of
    widths of ℓ_p ball intersections with verifiable lower-bound
    certificates, plus independent brute-force and identity oracles that
    cross-check every route against the others.
"""

from .closedform import CASE_LABELS, RegimeReport, classify_regime
from .exponent import (
    AffinePiece,
    ExponentResult,
    PiecewiseMax,
    build_objective,
    candidate_vertices,
    classify_region,
    minimize,
    regularity_margins,
    render_provenance,
)
from .finitedim import (
    BallSpec,
    CheckedInequality,
    DominationCheck,
    IntersectionSpec,
    LowerBoundCertificate,
    WidthOrder,
    classify_branch,
    cross_term_dominated,
    dyadic_block_order,
    intersection_order,
    phi_value,
    psi_value,
    single_ball_order,
    vk_lower_bound,
    vk_vertex_norm,
)
from .oracle import (
    BRANCH_LABELS,
    GridBracket,
    IdentityReport,
    Lcg,
    ValidationReport,
    check_scaling_identities,
    cross_validate,
    grid_minimize,
    refine_bracket,
    sample_branch,
)
from .params import (
    MAX_DIMENSION,
    IndexPartition,
    InterpCoeffs,
    ParameterError,
    ProblemSpec,
    RangeError,
    as_fraction,
    harmonic_mean,
    interp_coeffs,
    partition_indices,
)
from .values import INF, PowerProduct, decimal_str, inv_exponent, is_inf

__version__ = "0.1.0"

__all__ = [
    "CASE_LABELS",
    "RegimeReport",
    "classify_regime",
    "AffinePiece",
    "ExponentResult",
    "PiecewiseMax",
    "build_objective",
    "candidate_vertices",
    "classify_region",
    "minimize",
    "regularity_margins",
    "render_provenance",
    "BallSpec",
    "CheckedInequality",
    "DominationCheck",
    "IntersectionSpec",
    "LowerBoundCertificate",
    "WidthOrder",
    "classify_branch",
    "cross_term_dominated",
    "dyadic_block_order",
    "intersection_order",
    "phi_value",
    "psi_value",
    "single_ball_order",
    "vk_lower_bound",
    "vk_vertex_norm",
    "BRANCH_LABELS",
    "GridBracket",
    "IdentityReport",
    "Lcg",
    "ValidationReport",
    "check_scaling_identities",
    "cross_validate",
    "grid_minimize",
    "refine_bracket",
    "sample_branch",
    "MAX_DIMENSION",
    "IndexPartition",
    "InterpCoeffs",
    "ParameterError",
    "ProblemSpec",
    "RangeError",
    "as_fraction",
    "harmonic_mean",
    "interp_coeffs",
    "partition_indices",
    "INF",
    "PowerProduct",
    "decimal_str",
    "inv_exponent",
    "is_inf",
    "__version__",
]
