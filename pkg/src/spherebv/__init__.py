"""spherebv: spherical harmonics, ultradifferentiable classes, and
boundary values of harmonic functions on the unit ball.

An exact rational core (harmonic bases, zonal kernels, symbolic
derivatives in Cartesian, radial and spherical coordinates) supports
numerical verification of explicit derivative bounds, weight-sequence
calculus with associated functions, coefficient-decay classification,
Poisson-transform boundary values, and Abel-summability support
detection.
"""

__version__ = "0.1.0"

from .classify import (
    classify_dual,
    classify_function,
    laplace_power_check,
    norm_track,
    partial_sum_remainder,
)
from .derivative_bounds import (
    campaign,
    verify_angular_derivative_sup,
    verify_solid_derivative_sup,
    verify_step_l2,
    verify_surface_derivative_sup,
)
from .expansion import CoeffComponent, Expansion, ZonalComponent
from .harmonics import (
    HarmonicBasis,
    ZonalKernel,
    build_basis,
    dim_h,
    eigenvalue,
    monomial_sphere_integral,
    surface_area,
    zonal,
    zonal_value,
)
from .poisson import (
    PoissonEvaluator,
    boundary_recover,
    bv_roundtrip,
    growth_classify,
    poisson_evaluate,
    poisson_kernel,
    poisson_kernel_series,
    poisson_transform,
)
from .polynomials import (
    Polynomial,
    RadialForm,
    TrigForm,
    diff_cartesian,
    diff_spherical,
    sphere_grid,
    sup_norm_estimate,
    to_spherical,
)
from .quadrature import QuadratureRule, integrate, lq_norm, make_rule, project
from .reports import BoundVerdict, Cap, ClassificationReport, GrowthReport, SupportReport
from .support import detect_support, forward_check, rate_check
from .weights import (
    AssociatedFunction,
    ConditionFlags,
    WeightSequence,
    associated_m,
    associated_mstar,
    check_conditions,
    mstar_regularization,
    petzsche_vogt_bound,
    verify_assoc_inequality,
)

__all__ = [
    "AssociatedFunction",
    "BoundVerdict",
    "Cap",
    "ClassificationReport",
    "CoeffComponent",
    "ConditionFlags",
    "Expansion",
    "GrowthReport",
    "HarmonicBasis",
    "PoissonEvaluator",
    "Polynomial",
    "QuadratureRule",
    "RadialForm",
    "SupportReport",
    "TrigForm",
    "WeightSequence",
    "ZonalComponent",
    "ZonalKernel",
    "associated_m",
    "associated_mstar",
    "boundary_recover",
    "build_basis",
    "bv_roundtrip",
    "campaign",
    "check_conditions",
    "classify_dual",
    "classify_function",
    "detect_support",
    "diff_cartesian",
    "diff_spherical",
    "dim_h",
    "eigenvalue",
    "forward_check",
    "growth_classify",
    "integrate",
    "laplace_power_check",
    "lq_norm",
    "make_rule",
    "monomial_sphere_integral",
    "mstar_regularization",
    "norm_track",
    "partial_sum_remainder",
    "petzsche_vogt_bound",
    "poisson_evaluate",
    "poisson_kernel",
    "poisson_kernel_series",
    "poisson_transform",
    "project",
    "rate_check",
    "sphere_grid",
    "sup_norm_estimate",
    "surface_area",
    "to_spherical",
    "verify_angular_derivative_sup",
    "verify_assoc_inequality",
    "verify_solid_derivative_sup",
    "verify_step_l2",
    "verify_surface_derivative_sup",
    "zonal",
    "zonal_value",
]
