"""Sharp lower bounds for the mean outer radius, and their certificates.

A harmonic homeomorphism of A(1, R) onto a ring with unit inner boundary
cannot compress the outer boundary below (R + 1/R)/2 in mean radius, at
least when the distortion is moderate (modulus log R <= 3/2) or when either
the inner-circle average of h or of its normal derivative vanishes. With
the inner normalization and nonnegative initial speed the bound sharpens to
(R^2 + lam)/((1 + lam) R), attained exactly by rotations of h^lam.

This module provides the scalar bounds, the gate conditions, the positivity
certificates used in the wide-annulus argument (a sign function of R, a
per-mode quadratic-form determinant, a weight function), the per-mode and
boundary identities they rest on, a refinement of Schottky's theorem for
conformal maps, a theorem gate producing structured BoundReports, and a
falsification probe for the equality case at the critical configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ParameterDomainError
from .means import (
    is_class_D,
    is_class_N,
    mean_outer_radius,
    quadratic_mean_mode,
    quadratic_mean_profile,
    variance_profile,
)
from .operators import k_functional, lambda_from_speed
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, circle_angles
from .series import Annulus, HarmonicSeries, circle_fields

GATE_TOL = 1e-9
MODULUS_LIMIT = 1.5


# ---------------------------------------------------------------------------
# Scalar lower bounds for R_*/r_* with r_* = 1.
# ---------------------------------------------------------------------------

def nitsche_bound(R: float) -> float:
    """The sharp bound (R + 1/R)/2 = cosh(log R)."""
    _require_outer(R)
    return 0.5 * (R + 1.0 / R)


def weitsman_bound(R: float) -> float:
    """Weitsman's bound 1 + log(R)^2 / (2 R^2)."""
    _require_outer(R)
    return 1.0 + 0.5 * math.log(R) ** 2 / R**2


def kalaj_bound(R: float) -> float:
    """Kalaj's bound 1 + log(R)^2 / 2."""
    _require_outer(R)
    return 1.0 + 0.5 * math.log(R) ** 2


def condition_modulus(R: float) -> bool:
    """Whether the unconditional gate log(R) <= 3/2 holds."""
    _require_outer(R)
    return math.log(R) <= MODULUS_LIMIT + 1e-12


def _require_outer(R: float) -> None:
    if not (R > 1.0 and math.isfinite(R)):
        raise ParameterDomainError("outer radius R must satisfy R > 1")


# ---------------------------------------------------------------------------
# Positivity certificates for the weighted-integral argument.
# ---------------------------------------------------------------------------

def gz_weight(R: float, lam: float, rho):
    """Weight (R^2 - lam) log(R/rho) + (R^2 - rho^2) lam / rho^2.

    This multiplies the conformal part of the gradient inside the weighted
    integral; it is nonnegative for 1 <= rho <= R and -1 < lam <= 1.
    """
    r = np.asarray(rho, dtype=np.float64)
    out = (R**2 - lam) * np.log(R / r) + (R**2 - r**2) * lam / r**2
    return out if out.shape else float(out)


def gzbar_gate_margin(R: float, lam: float) -> float:
    """Margin R^2 - 1 - (R^2 - lam) log R of the anticonformal-weight gate.

    Nonnegativity makes the weight on the anticonformal part of the
    gradient nonnegative on all of [1, R] (it is concave in rho and
    vanishes at rho = R).  For lam = 1 it holds up to R = e, and for lam = 0
    up to R = 2.
    """
    _require_outer(R)
    return R**2 - 1.0 - (R**2 - lam) * math.log(R)


def wide_annulus_certificate(R):
    """Sign certificate 4R^2(R^2-3) log(R)^2 + 8R^2(R^2-1) log(R)
    - (R^2-1)(R^4-1).

    Positivity on [e, e^(3/2)] makes the quadratic form in the log and
    constant coefficients positive definite, which closes the bound for
    moduli in (1, 3/2].  At the endpoints the value reduces to
    13e^4 - e^6 - 19e^2 - 1 and 22e^6 - e^9 - 38e^3 - 1, both positive.
    """
    r = np.asarray(R, dtype=np.float64)
    log_r = np.log(r)
    out = (
        4.0 * r**2 * (r**2 - 3.0) * log_r**2
        + 8.0 * r**2 * (r**2 - 1.0) * log_r
        - (r**2 - 1.0) * (r**4 - 1.0)
    )
    return out if out.shape else float(out)


class ModeFormCoeffs(NamedTuple):
    """Coefficients of the per-mode quadratic form in (a_n, b_n)."""

    A: float
    B: float
    C: float


def mode_form_coeffs(n: int, R: float) -> ModeFormCoeffs:
    """Quadratic-form coefficients for mode n >= 1 at outer radius R.

    A_n = 4 R^(2n+2) + (R^2-3)(R^2+1) - 4n(R^4-1)
    B_n = 4 R^(2-2n) + (R^2-3)(R^2+1)
    C_n = -(R^2-1)(2n(R^2+1) - R^2 - 3)
    """
    if n < 1:
        raise ParameterDomainError("mode index n must be >= 1")
    _require_outer(R)
    cross = (R**2 - 3.0) * (R**2 + 1.0)
    A = 4.0 * R ** (2 * n + 2) + cross - 4.0 * n * (R**4 - 1.0)
    B = 4.0 * R ** (2 - 2 * n) + cross
    C = -(R**2 - 1.0) * (2.0 * n * (R**2 + 1.0) - R**2 - 3.0)
    return ModeFormCoeffs(A, B, C)


def mode_form_certificate(n: int, R: float) -> float:
    """Determinant-style certificate A_n * (R^2-3)(R^2+1) - C_n^2.

    Positive for every n >= 2 and R >= e; positivity makes the per-mode
    quadratic form positive definite after shrinking B_n to (R^2-3)(R^2+1).
    """
    if n < 2:
        raise ParameterDomainError("the certificate is defined for n >= 2")
    coeffs = mode_form_coeffs(n, R)
    reduced_b = (R**2 - 3.0) * (R**2 + 1.0)
    return coeffs.A * reduced_b - coeffs.C**2


def mode_form_certificate_expanded(n: int, R: float) -> float:
    """Expanded polynomial form of the same certificate.

    4 [ R^(2n+2)(R^4 - 2R^2 - 3) - n^2 R^8 + (4n-2) R^6 + 2 n^2 R^4
        + (6-4n) R^2 - n^2 ]
    """
    if n < 2:
        raise ParameterDomainError("the certificate is defined for n >= 2")
    _require_outer(R)
    return 4.0 * (
        R ** (2 * n + 2) * (R**4 - 2.0 * R**2 - 3.0)
        - n**2 * R**8
        + (4.0 * n - 2.0) * R**6
        + 2.0 * n**2 * R**4
        + (6.0 - 4.0 * n) * R**2
        - n**2
    )


# ---------------------------------------------------------------------------
# Identities feeding the wide-annulus argument.
# ---------------------------------------------------------------------------

def mode_energy_excess(h: HarmonicSeries) -> float:
    """sum over n != 0 of (n - 1) |a_n + b_n|^2.

    Equal, through the inner-circle identity below, to the boundary data
    (1/i) mean(conj(h) h_theta) - mean(|h|^2) + |mean h|^2 at rho = 1.
    """
    if h.N == 0:
        return 0.0
    ns = h.mode_numbers.astype(np.float64)
    return float(np.sum((ns - 1.0) * np.abs(h.a_modes + h.b_modes) ** 2))


def inner_circle_identity_residual(
    h: HarmonicSeries, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Residual of the inner-circle identity tying the boundary data of h
    to the mode sums (left side by quadrature at rho = 1, right side from
    coefficients)."""
    M = cfg.angular_count(2 * h.N)
    f = circle_fields(h, 1.0, circle_angles(M))
    rotation_flux = complex(np.mean(np.conj(f.values) * f.d_theta))
    lhs = (
        rotation_flux.imag
        - float(np.mean(np.abs(f.values) ** 2))
        + abs(complex(np.mean(f.values))) ** 2
    )
    return abs(lhs - mode_energy_excess(h))


def mode_quadratic_form_residual(
    h: HarmonicSeries, n: int, R: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """Residual of the per-mode identity (lam = 1): the weighted integral of
    the operator applied to the single-mode mean, minus (R^2-1)(n-1)
    |a_n + b_n|^2, equals the quadratic form with the A/B/C coefficients
    divided by 2(R^2 + 1)."""
    if n < 1:
        raise ParameterDomainError("mode index n must be >= 1")
    a_n, b_n = h.coeff(n)
    lhs = k_functional(quadratic_mean_mode(h, n), 1.0, R, cfg)
    lhs -= (R**2 - 1.0) * (n - 1.0) * abs(a_n + b_n) ** 2
    A, B, C = mode_form_coeffs(n, R)
    rhs = (
        A * abs(a_n) ** 2 + B * abs(b_n) ** 2 + 2.0 * C * (a_n * np.conj(b_n)).real
    ) / (2.0 * (R**2 + 1.0))
    return abs(lhs - rhs)


def variance_k_bound(
    h: HarmonicSeries, R: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> tuple[float, float]:
    """Pair (K_1[V],  (R^2-1) * mode energy excess) for R > e.

    The first dominates the second; summing the per-mode inequality gives
    the variance estimate that drives the wide-annulus bound.
    """
    if R <= math.e:
        raise ParameterDomainError("the variance estimate requires R > e")
    lhs = k_functional(variance_profile(h), 1.0, R, cfg)
    rhs = (R**2 - 1.0) * mode_energy_excess(h)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Refinement of Schottky's theorem for conformal series.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SchottkyReport:
    """Outcome of the conformal mean-radius and area checks on A(1, R)."""

    applicable: bool
    reason: str
    R: float
    mean_radius: float
    area: float
    area_bound: float
    mode_sum_margin: float
    boundary_deviation: float
    jacobian_min: float
    windings_ok: bool
    passed: bool

    def to_dict(self) -> dict:
        return asdict(self)


def schottky_check(
    h: HarmonicSeries, R: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> SchottkyReport:
    """Check the conformal refinement of Schottky's theorem on A(1, R).

    For a conformal series (all b_n = 0, no log term) with vanishing
    constant term and |h| = 1 on the unit circle (within 1e-6): the mean
    outer radius is at least R and the image area of the annulus is at
    least pi (R^2 - 1), with the mode sum over n != 0 of
    |a_n|^2 (R^(2n) - 1) >= R^2 - 1 as intermediate step.  The injectivity
    probe results are reported as evidence of class membership but do not
    gate applicability; a failed probe explains a failed bound.
    """
    from .sampling import injectivity_probe  # local import avoids a cycle

    _require_outer(R)

    def not_applicable(reason: str, deviation: float = math.nan) -> SchottkyReport:
        return SchottkyReport(
            applicable=False, reason=reason, R=R,
            mean_radius=math.nan, area=math.nan,
            area_bound=math.pi * (R**2 - 1.0),
            mode_sum_margin=math.nan, boundary_deviation=deviation,
            jacobian_min=math.nan, windings_ok=False, passed=False,
        )

    if float(np.max(np.abs(h.b_modes), initial=0.0)) > 1e-12:
        return not_applicable("series is not conformal (some b_n != 0)")
    if abs(h.a0) > 1e-12 or abs(h.b0) > 1e-12:
        return not_applicable("log or constant term present")
    thetas = circle_angles(max(1024, cfg.angular_count(h.N)))
    moduli = np.abs(circle_fields(h, 1.0, thetas).values)
    deviation = float(np.max(np.abs(moduli - 1.0)))
    if deviation > 1e-6:
        return not_applicable(
            "boundary values of |h| deviate from 1 beyond 1e-6", deviation
        )
    probe = injectivity_probe(h, R)

    ns = h.mode_numbers.astype(np.float64)
    amps = np.abs(h.a_modes) ** 2
    mode_sum = float(np.sum(amps * (R ** (2.0 * ns) - 1.0)))
    area = float(np.pi * np.sum(ns * amps * (R ** (2.0 * ns) - 1.0)))
    area_bound = math.pi * (R**2 - 1.0)
    measured = mean_outer_radius(h, R)
    passed = (
        measured >= R - 1e-9
        and area >= area_bound - 1e-6
        and mode_sum >= R**2 - 1.0 - 1e-9
    )
    return SchottkyReport(
        applicable=True, reason="", R=R,
        mean_radius=measured, area=area, area_bound=area_bound,
        mode_sum_margin=mode_sum - (R**2 - 1.0),
        boundary_deviation=deviation,
        jacobian_min=probe.jacobian_min, windings_ok=probe.windings_ok,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# The theorem gate.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Structured verdict of the gate for one (series, R) pair.

    `measured` is the mean outer radius of the series rescaled so that its
    inner-circle quadratic mean is 1 (the rescaling factor is recorded in
    `inner_scale`; it is 1 for inputs already normalized).  `rule` names
    the strongest applicable hypothesis; `margin` is measured - bound.
    """

    R: float
    modulus: float
    class_D: bool
    class_N: bool
    rule: str
    bound: float
    measured: float
    margin: float
    verdict: str
    inner_scale: float

    def to_dict(self) -> dict:
        return asdict(self)


def theorem_gate(h: HarmonicSeries, R: float) -> BoundReport:
    """Apply the strongest applicable lower bound to the series on A(1, R).

    Order of preference:
      1. vanishing inner mean with nonnegative initial speed: bound
         (R^2 + lam)/((1 + lam) R) with lam from the measured speed (this
         dominates (R + 1/R)/2 for every lam <= 1);
      2. vanishing mean normal derivative: bound (R + 1/R)/2;
      3. modulus gate log R <= 3/2: bound (R + 1/R)/2;
      4. otherwise the verdict is "not-applicable".
    """
    annulus = Annulus(R)
    U = quadratic_mean_profile(h)
    u1 = float(U.value(1.0))
    class_d = is_class_D(h)
    class_n = is_class_N(h)
    base = nitsche_bound(R)
    if u1 <= 0.0:
        return BoundReport(
            R=R, modulus=annulus.modulus, class_D=class_d, class_N=class_n,
            rule="none", bound=base, measured=0.0, margin=-base,
            verdict="not-applicable", inner_scale=0.0,
        )
    scale = math.sqrt(u1)
    measured = mean_outer_radius(h, R) / scale
    normalized_speed = float(U.deriv1(1.0)) / (2.0 * u1)

    rule = "none"
    bound = base
    if class_d and normalized_speed >= 0.0:
        lam = lambda_from_speed(normalized_speed)
        bound = (R**2 + lam) / ((1.0 + lam) * R)
        rule = "initial-speed"
    elif class_n:
        rule = "neumann-mean"
    elif annulus.modulus <= MODULUS_LIMIT + 1e-12:
        rule = "modulus"

    margin = measured - bound
    if rule == "none":
        verdict = "not-applicable"
    else:
        verdict = "pass" if margin >= -GATE_TOL else "fail"
    return BoundReport(
        R=R, modulus=annulus.modulus, class_D=class_d, class_N=class_n,
        rule=rule, bound=bound, measured=measured, margin=margin,
        verdict=verdict, inner_scale=scale,
    )


# ---------------------------------------------------------------------------
# Equality-case falsification probe at the critical configuration.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UniquenessReport:
    """Measured response of the critical configuration to perturbations.

    For each epsilon the critical map gets an n = 2 perturbation of size
    epsilon, is renormalized on the inner circle, and the excess of its
    mean outer radius over the critical value (R + 1/R)/2 is recorded.  The
    excess is strictly positive and quadratic in epsilon (log-log slope 2),
    so equality forces the perturbation to vanish; a constant-term
    perturbation instead trips the vanishing-mean class flag.
    """

    R: float
    critical_radius: float
    epsilons: tuple[float, ...]
    gaps: tuple[float, ...]
    loglog_slope: float
    zero_eps_gap: float
    const_term_breaks_class: bool

    def to_dict(self) -> dict:
        return asdict(self)


def uniqueness_probe(
    R: float, epsilons: Sequence[float] | None = None
) -> UniquenessReport:
    from .sampling import perturb_extremal  # local import avoids a cycle

    _require_outer(R)
    if epsilons is None:
        epsilons = np.geomspace(1e-4, 1e-2, 9)
    eps = np.asarray(epsilons, dtype=np.float64)
    critical = nitsche_bound(R)
    gaps = np.array([
        mean_outer_radius(perturb_extremal(1.0, 2, e, renormalize=True), R)
        - critical
        for e in eps
    ])
    slope = float(np.polyfit(np.log(eps), np.log(gaps), 1)[0])
    zero_gap = abs(
        mean_outer_radius(perturb_extremal(1.0, 2, 0.0, renormalize=True), R)
        - critical
    )
    broken = not is_class_D(perturb_extremal(1.0, 0, 1e-3, renormalize=False))
    return UniquenessReport(
        R=R, critical_radius=critical,
        epsilons=tuple(float(e) for e in eps),
        gaps=tuple(float(g) for g in gaps),
        loglog_slope=slope, zero_eps_gap=zero_gap,
        const_term_breaks_class=broken,
    )
