"""Krawtchouk polynomials: exact rational evaluation and WKB-style
asymptotic approximations over twelve matched regions, with tooling to
quantify approximation error against the exact values.
"""

from .exact_core import (
    DomainError,
    ExactTable,
    Params,
    build_table,
    krawtchouk_real,
    krawtchouk_sum,
    lemma3_value,
    orthogonality_sum,
    symmetry_image,
    weight,
)
from .state_space import (
    DEFAULT_CONFIG,
    REGION_TAGS,
    ClassifierConfig,
    CornerCoords,
    RegionId,
    ScaledPoint,
    classify,
    corner_coords,
    ellipse_residual,
    u0,
    u_pm,
    y_pm,
)
from .region_formulas import (
    ApproxValue,
    approx,
    evaluate_region,
    k1,
    k2,
    k3_k4,
    k5,
    k6,
    k7,
    k8,
    k9,
    k10,
    k11,
    k12,
)
from .wkb_core import (
    ComplexAmplitude,
    SingularityError,
    amplitude,
    k_pm,
    k_pm_log,
    l_pm,
    lambda_pm,
    phi0,
    psi0,
    psi_pm,
    theta,
    u0_log_ratio,
    vartheta,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ExactTable",
    "Params",
    "build_table",
    "krawtchouk_real",
    "krawtchouk_sum",
    "lemma3_value",
    "orthogonality_sum",
    "symmetry_image",
    "weight",
    "DEFAULT_CONFIG",
    "REGION_TAGS",
    "ClassifierConfig",
    "CornerCoords",
    "RegionId",
    "ScaledPoint",
    "classify",
    "corner_coords",
    "ellipse_residual",
    "u0",
    "u_pm",
    "y_pm",
    "ApproxValue",
    "approx",
    "evaluate_region",
    "k1",
    "k2",
    "k3_k4",
    "k5",
    "k6",
    "k7",
    "k8",
    "k9",
    "k10",
    "k11",
    "k12",
    "ComplexAmplitude",
    "SingularityError",
    "amplitude",
    "k_pm",
    "k_pm_log",
    "l_pm",
    "lambda_pm",
    "phi0",
    "psi0",
    "psi_pm",
    "theta",
    "u0_log_ratio",
    "vartheta",
    "__version__",
]
