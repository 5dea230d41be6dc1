"""Weighted-cover gap analysis for submodular set functions.

Dense set functions on small ground sets, fractional partitions,
coverings and packings, the upper/lower subadditivity gaps and their
duality, modularity certificates and stability bounds, the information
measures and matroid/Gaussian specializations built on them, and an
exact rational LP underneath.
"""

from .bitsets import complement, elements, full_mask, mask_of, subsets
from .errors import (
    ConsistencyError,
    FracsubError,
    PreconditionError,
    ValidationError,
)
from .families import (
    FamilyClassification,
    WeightedFamily,
    co_singleton_family,
    find_fractional_partition,
    min_multiplicity,
    singleton_family,
)
from .gaps import (
    CoveringEqualityReport,
    GapReport,
    ModularityCertificate,
    ShearerReport,
    StabilityReport,
    certify_modular_partial,
    duality_residual,
    equality_conditions_covering,
    gap_lower,
    gap_report,
    gap_upper,
    shearer_check,
    stability_check,
)
from .gauss import (
    DetEqualityReport,
    PDMatrix,
    det_equality_check,
    gaussian_entropy_setfn,
    log_principal_minor,
    preset_family,
    principal_minor,
)
from .info import (
    DataProcessingReport,
    DivergenceReport,
    IndependenceReport,
    JointDistribution,
    MIStabilityReport,
    MMIMaxResult,
    MMIResult,
    ProductDistribution,
    RecursionReport,
    SharedInformationResult,
    apply_channels,
    conditional_mutual_information,
    divergence_equality,
    dual_total_correlation,
    entropy,
    entropy_setfn,
    family_mutual_information,
    independence_equality,
    marginal_distribution,
    mmi_data_processing_check,
    mmi_max_over_partitions,
    mmi_recursion_residual,
    mutual_information_stability,
    project_family,
    relative_entropy_setfn,
    shared_information,
    symmetric_form,
    total_correlation,
)
from .lp import Constraint, LPOutcome, RationalLP, residuals, solve, verify
from .matroid import (
    FreeMatroid,
    GraphicMatroid,
    LinearMatroid,
    RankEqualityReport,
    UniformMatroid,
    loops,
    rank_equality_check,
    rank_setfn,
)
from .rationals import DEFAULT_TOL, GAUSS_TOL, PMF_SUM_TOL, Scalar
from .setfn import (
    PartialSetFunction,
    SetFunction,
    Verdict,
    generate_submodular,
    is_modular,
    is_nondecreasing,
    is_prefix_nondecreasing,
    is_submodular,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "complement",
    "elements",
    "full_mask",
    "mask_of",
    "subsets",
    "FracsubError",
    "ValidationError",
    "PreconditionError",
    "ConsistencyError",
    "Scalar",
    "DEFAULT_TOL",
    "GAUSS_TOL",
    "PMF_SUM_TOL",
    "SetFunction",
    "PartialSetFunction",
    "Verdict",
    "is_submodular",
    "is_modular",
    "is_nondecreasing",
    "is_prefix_nondecreasing",
    "generate_submodular",
    "WeightedFamily",
    "FamilyClassification",
    "singleton_family",
    "co_singleton_family",
    "find_fractional_partition",
    "min_multiplicity",
    "gap_upper",
    "gap_lower",
    "gap_report",
    "GapReport",
    "duality_residual",
    "stability_check",
    "StabilityReport",
    "certify_modular_partial",
    "ModularityCertificate",
    "equality_conditions_covering",
    "CoveringEqualityReport",
    "shearer_check",
    "ShearerReport",
    "RationalLP",
    "Constraint",
    "LPOutcome",
    "solve",
    "residuals",
    "verify",
    "JointDistribution",
    "ProductDistribution",
    "entropy",
    "entropy_setfn",
    "relative_entropy_setfn",
    "mutual_information_stability",
    "MIStabilityReport",
    "independence_equality",
    "IndependenceReport",
    "divergence_equality",
    "DivergenceReport",
    "family_mutual_information",
    "MMIResult",
    "total_correlation",
    "dual_total_correlation",
    "shared_information",
    "SharedInformationResult",
    "mmi_max_over_partitions",
    "MMIMaxResult",
    "project_family",
    "marginal_distribution",
    "conditional_mutual_information",
    "mmi_recursion_residual",
    "RecursionReport",
    "apply_channels",
    "mmi_data_processing_check",
    "DataProcessingReport",
    "symmetric_form",
    "LinearMatroid",
    "GraphicMatroid",
    "UniformMatroid",
    "FreeMatroid",
    "rank_setfn",
    "loops",
    "rank_equality_check",
    "RankEqualityReport",
    "PDMatrix",
    "principal_minor",
    "log_principal_minor",
    "gaussian_entropy_setfn",
    "det_equality_check",
    "DetEqualityReport",
    "preset_family",
]
