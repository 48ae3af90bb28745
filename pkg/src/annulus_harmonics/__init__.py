"""Numerics for complex harmonic functions on circular annuli.

The package represents harmonic functions as truncated Laurent-log series,
computes their circular means and Jacobians in closed form and by
quadrature, applies the lambda-family of radial convexity operators, and
verifies to stated tolerances the identities and sharp mean-radius bounds
governing harmonic homeomorphisms between annuli, including the extremal
family h^lam and its equality cases.
"""

from .errors import (
    DegenerateSeriesError,
    InternalInconsistencyError,
    NumericOverflowError,
    ParameterDomainError,
    QuadratureConvergenceError,
    SpeedSignError,
    ToolkitError,
    WindingNotIntegerError,
    ZeroOnCircleError,
)
from .series import (
    Annulus,
    HarmonicSeries,
    PolarPoint,
    derivatives,
    evaluate,
    extremal_map,
    from_json_dict,
    grad_norm_sq,
    jacobian,
    lambda_from_radii,
    load_series,
    save_series,
    scale_rotate,
    to_json_dict,
)
from .quadrature import (
    QuadratureConfig,
    circular_mean,
    dirichlet_energy,
    enclosed_area,
    quadratic_mean_numeric,
    radial_integrate,
    winding_number,
)
from .means import (
    RadialProfile,
    initial_speed,
    inner_mean,
    is_class_D,
    is_class_N,
    mean_outer_radius,
    normal_mean_coeff,
    quadratic_mean_mode,
    quadratic_mean_profile,
    variance_profile,
)
from .operators import (
    LambdaOperator,
    evolution_lower_bound,
    k_endpoint,
    k_functional,
    k_quadrature,
    lambda_from_speed,
    variance_subsolution_min,
)
from .bounds import (
    BoundReport,
    SchottkyReport,
    UniquenessReport,
    kalaj_bound,
    mode_form_certificate,
    mode_form_coeffs,
    nitsche_bound,
    schottky_check,
    theorem_gate,
    uniqueness_probe,
    weitsman_bound,
    wide_annulus_certificate,
)
from .sampling import (
    SamplerConfig,
    injectivity_probe,
    normalize_inner,
    perturb_extremal,
    random_series,
)

__version__ = "0.1.0"

__all__ = [
    "Annulus",
    "BoundReport",
    "DegenerateSeriesError",
    "HarmonicSeries",
    "InternalInconsistencyError",
    "LambdaOperator",
    "NumericOverflowError",
    "ParameterDomainError",
    "PolarPoint",
    "QuadratureConfig",
    "QuadratureConvergenceError",
    "RadialProfile",
    "SamplerConfig",
    "SchottkyReport",
    "SpeedSignError",
    "ToolkitError",
    "UniquenessReport",
    "WindingNotIntegerError",
    "ZeroOnCircleError",
    "circular_mean",
    "derivatives",
    "dirichlet_energy",
    "enclosed_area",
    "evaluate",
    "evolution_lower_bound",
    "extremal_map",
    "from_json_dict",
    "grad_norm_sq",
    "initial_speed",
    "injectivity_probe",
    "inner_mean",
    "is_class_D",
    "is_class_N",
    "jacobian",
    "k_endpoint",
    "k_functional",
    "k_quadrature",
    "kalaj_bound",
    "lambda_from_radii",
    "lambda_from_speed",
    "load_series",
    "mean_outer_radius",
    "mode_form_certificate",
    "mode_form_coeffs",
    "nitsche_bound",
    "normal_mean_coeff",
    "normalize_inner",
    "perturb_extremal",
    "quadratic_mean_mode",
    "quadratic_mean_numeric",
    "quadratic_mean_profile",
    "radial_integrate",
    "random_series",
    "save_series",
    "scale_rotate",
    "schottky_check",
    "theorem_gate",
    "to_json_dict",
    "uniqueness_probe",
    "variance_profile",
    "variance_subsolution_min",
    "weitsman_bound",
    "wide_annulus_certificate",
    "winding_number",
]
