"""Scalar bounds, certificates, gates, the conformal refinement and probes."""

import math

import numpy as np
import pytest

from annulus_harmonics import (
    HarmonicSeries,
    ParameterDomainError,
    extremal_map,
    kalaj_bound,
    nitsche_bound,
    scale_rotate,
    schottky_check,
    theorem_gate,
    uniqueness_probe,
    weitsman_bound,
    wide_annulus_certificate,
)
from annulus_harmonics.bounds import (
    condition_modulus,
    gz_weight,
    gzbar_gate_margin,
    inner_circle_identity_residual,
    mode_energy_excess,
    mode_form_certificate,
    mode_form_certificate_expanded,
    mode_form_coeffs,
    mode_quadratic_form_residual,
    variance_k_bound,
)

E = math.e
E32 = math.exp(1.5)
CRITICAL = extremal_map(1.0)
IDENTITY = extremal_map(0.0)


# ---------------------------------------------------------------------------
# scalar bounds
# ---------------------------------------------------------------------------

def test_nitsche_values():
    assert nitsche_bound(2.0) == pytest.approx(1.25)
    assert nitsche_bound(E) == pytest.approx(math.cosh(1.0))
    assert nitsche_bound(1.0 + 1e-9) == pytest.approx(1.0, abs=1e-9)


def test_classical_bounds_at_e():
    assert kalaj_bound(E) == pytest.approx(1.5)
    assert weitsman_bound(E) == pytest.approx(1.0 + 0.5 * math.exp(-2.0))


def test_bound_ordering_on_grid():
    for R in np.linspace(1.0001, 20.0, 500):
        w, k, n = weitsman_bound(R), kalaj_bound(R), nitsche_bound(R)
        assert w <= k + 1e-14
        assert k <= n + 1e-14


def test_bounds_reject_degenerate_radius():
    for fn in (nitsche_bound, weitsman_bound, kalaj_bound):
        with pytest.raises(ParameterDomainError):
            fn(1.0)


def test_condition_modulus():
    assert condition_modulus(E)
    assert condition_modulus(E32)  # boundary case
    assert not condition_modulus(5.0)


# ---------------------------------------------------------------------------
# gate margins and weights
# ---------------------------------------------------------------------------

def test_gzbar_gate_samples():
    assert gzbar_gate_margin(E, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert gzbar_gate_margin(2.0, 0.0) == pytest.approx(3.0 - 4.0 * math.log(2.0))
    assert gzbar_gate_margin(1.5, 1.0) > 0.0


def test_gz_weight_samples():
    assert gz_weight(2.0, 0.7, 2.0) == pytest.approx(0.0, abs=1e-14)
    assert float(gz_weight(2.0, 0.0, 1.5)) == pytest.approx(4.0 * math.log(2 / 1.5))
    want = 3.0 * math.log(4.0 / 3.0) + 1.75 / 2.25
    assert gz_weight(2.0, 1.0, 1.5) == pytest.approx(want, abs=1e-12)


def test_gz_weight_nonnegative_grid():
    for R in np.linspace(1.05, E32, 12):
        for lam in np.linspace(-1 + 1e-6, 1.0, 11):
            rho = np.linspace(1.0, R, 64)
            assert float(np.min(gz_weight(R, lam, rho))) >= -1e-12


# ---------------------------------------------------------------------------
# wide-annulus certificate
# ---------------------------------------------------------------------------

def test_wide_certificate_endpoint_values():
    # Recomputed from the closed form: 13e^4 - e^6 - 19e^2 - 1 and
    # 22e^6 - e^9 - 38e^3 - 1.
    want_e = 13 * E**4 - E**6 - 19 * E**2 - 1
    want_e32 = 22 * E**6 - E**9 - 38 * E**3 - 1
    assert wide_annulus_certificate(E) == pytest.approx(want_e, abs=1e-9)
    assert wide_annulus_certificate(E32) == pytest.approx(want_e32, abs=1e-9)
    assert want_e == pytest.approx(164.955, abs=1e-3)
    assert want_e32 == pytest.approx(8.0991, abs=1e-3)


def test_wide_certificate_positive_on_interval():
    grid = np.linspace(E, E32, 1000)
    assert float(np.min(wide_annulus_certificate(grid))) > 0.0


def test_wide_certificate_scaled_concavity():
    # Second difference of R^-4 * certificate stays negative for R >= e.
    grid = np.linspace(E, 12.0, 80)
    step = 1e-4
    f = lambda r: wide_annulus_certificate(r) / r**4  # noqa: E731
    fd2 = (f(grid + step) - 2 * f(grid) + f(grid - step)) / step**2
    assert float(np.max(fd2)) < 0.0


# ---------------------------------------------------------------------------
# per-mode quadratic form
# ---------------------------------------------------------------------------

def test_mode_coeffs_signs():
    for R in np.linspace(E, 10.0, 20):
        for n in range(2, 30):
            assert mode_form_coeffs(n, R).C < 0.0


def test_mode_coeffs_dominant_term():
    # For large n the positive-power term dominates A_n.
    n, R = 30, 1.8
    A = mode_form_coeffs(n, R).A
    assert A == pytest.approx(4.0 * R ** (2 * n + 2), rel=1e-2)


def test_mode_certificate_positive():
    for R in np.linspace(E, 10.0, 40):
        for n in range(2, 51):
            assert mode_form_certificate(n, R) > 0.0


def test_mode_certificate_matches_expansion():
    for R in (E, 3.5, 7.0, 10.0):
        for n in range(2, 51):
            d = mode_form_certificate(n, R)
            e = mode_form_certificate_expanded(n, R)
            assert abs(d - e) <= 1e-6 * max(1.0, abs(e))


def test_mode_certificate_n2_factored():
    for R in np.linspace(E, 10.0, 25):
        want = 4.0 * (R**2 - 1) * (R**8 - 5 * R**6 - 2 * R**4 + 6 * R**2 + 4)
        assert mode_form_certificate(2, R) == pytest.approx(want, rel=1e-6)


def test_mode_certificate_monotone_convex_in_n():
    for R in (E, 4.0, 8.0):
        vals = np.array([mode_form_certificate(n, R) for n in range(2, 40)])
        assert np.all(np.diff(vals) > 0.0)
        assert np.all(np.diff(vals, 2) > 0.0)


def test_mode_form_residual_random(rng):
    for n in (1, 2, 3, 5, 8):
        for R in (E, 2.9, E32):
            scale = math.exp(-1.5 * n)
            h = HarmonicSeries.from_coeffs(
                a={n: scale * complex(rng.normal(), rng.normal())},
                b={n: scale * complex(rng.normal(), rng.normal())},
            )
            assert mode_quadratic_form_residual(h, n, R) < 1e-6


def test_mode_form_residual_zero_coefficients():
    h = HarmonicSeries.from_coeffs(N=3, a={1: 1.0})
    assert mode_quadratic_form_residual(h, 3, E) < 1e-12


def test_mode_form_residual_critical_mode():
    # For the critical map's mode the identity reads 0 = 0.
    assert mode_quadratic_form_residual(CRITICAL, 1, 2.9) < 1e-10


# ---------------------------------------------------------------------------
# inner-circle identity and the variance estimate
# ---------------------------------------------------------------------------

def test_inner_identity_identity_map():
    assert inner_circle_identity_residual(IDENTITY) < 1e-14


def test_inner_identity_critical_map():
    # Rotation flux 1, quadratic mean 1, zero mean; excess (1-1)|1|^2 = 0.
    assert inner_circle_identity_residual(CRITICAL) < 1e-14
    assert mode_energy_excess(CRITICAL) == pytest.approx(0.0)


def test_inner_identity_random(tame_series):
    for seed in range(25):
        h = tame_series(seed=seed, N=10, decay=0.4)
        assert inner_circle_identity_residual(h) < 1e-10


def test_variance_k_bound_critical():
    lhs, rhs = variance_k_bound(CRITICAL, 3.0)
    assert rhs == pytest.approx(0.0, abs=1e-14)
    assert abs(lhs) < 1e-9


def test_variance_k_bound_pure_first_mode():
    h = HarmonicSeries.from_coeffs(a={1: 0.8}, b={1: 0.1j})
    lhs, rhs = variance_k_bound(h, 3.2)
    assert lhs >= rhs - 1e-9


def test_variance_k_bound_random(tame_series, rng):
    for seed in range(15):
        h = tame_series(seed=seed, N=5, decay=0.2)
        R = rng.uniform(E + 1e-3, E32)
        lhs, rhs = variance_k_bound(h, R)
        assert lhs >= rhs - 1e-6


def test_variance_k_bound_requires_wide_annulus():
    with pytest.raises(ParameterDomainError):
        variance_k_bound(CRITICAL, 2.0)


# ---------------------------------------------------------------------------
# conformal refinement of Schottky's theorem
# ---------------------------------------------------------------------------

def test_schottky_rotation_equality():
    h = scale_rotate(IDENTITY, complex(math.cos(1.1), math.sin(1.1)))
    report = schottky_check(h, 2.0)
    assert report.applicable
    assert report.mean_radius == pytest.approx(2.0, abs=1e-12)
    assert report.area == pytest.approx(report.area_bound, abs=1e-9)
    assert report.mode_sum_margin == pytest.approx(0.0, abs=1e-12)
    assert report.passed


def test_schottky_perturbed_strict():
    h = HarmonicSeries.from_coeffs(a={1: 1.0, 2: 5e-7})
    report = schottky_check(h, 2.0)
    assert report.applicable and report.passed
    assert report.mean_radius > 2.0
    assert report.area > report.area_bound


def test_schottky_second_mode_only():
    # Winding 2, not injective, but the mean-radius conclusion still holds.
    h = HarmonicSeries.from_coeffs(a={2: 1.0})
    report = schottky_check(h, 2.0)
    assert report.applicable
    assert not report.windings_ok
    assert report.mean_radius == pytest.approx(4.0)
    assert report.passed


def test_schottky_rejects_nonconformal():
    report = schottky_check(CRITICAL, 2.0)
    assert not report.applicable
    assert "conformal" in report.reason


def test_schottky_rejects_off_circle_boundary():
    h = HarmonicSeries.from_coeffs(a={1: 1.0, 2: 0.1})
    report = schottky_check(h, 2.0)
    assert not report.applicable
    assert report.boundary_deviation > 1e-6


# ---------------------------------------------------------------------------
# theorem gate
# ---------------------------------------------------------------------------

def test_gate_critical_configuration():
    report = theorem_gate(CRITICAL, 2.0)
    assert report.rule == "initial-speed"
    assert report.bound == pytest.approx(1.25)
    assert report.measured == pytest.approx(1.25)
    assert abs(report.margin) < 1e-12
    assert report.verdict == "pass"


def test_gate_extremal_lam06():
    report = theorem_gate(extremal_map(0.6), 3.0)
    assert report.bound == pytest.approx(2.0)
    assert report.measured == pytest.approx(2.0)
    assert report.verdict == "pass"


def test_gate_identity_wide_annulus():
    # Class D with unit speed: the sharp bound equals R itself.
    report = theorem_gate(IDENTITY, 5.0)
    assert report.class_D and report.class_N
    assert report.rule == "initial-speed"
    assert report.bound == pytest.approx(5.0)
    assert report.measured == pytest.approx(5.0)
    assert report.verdict == "pass"


def test_gate_neumann_rule():
    # Negative speed disables the sharp rule; the vanishing normal-mean
    # class still gives the unconditional bound, which this series fails.
    h = HarmonicSeries.from_coeffs(a={-1: 1.0})
    report = theorem_gate(h, 2.0)
    assert report.rule == "neumann-mean"
    assert report.measured == pytest.approx(0.5)
    assert report.verdict == "fail"


def test_gate_modulus_rule():
    h = HarmonicSeries.from_coeffs(a={1: 1.0, -1: 0.2}, a0=0.1, b0=0.05)
    report = theorem_gate(h, 2.0)
    assert report.rule == "modulus"
    assert report.verdict in ("pass", "fail")


def test_gate_not_applicable():
    h = HarmonicSeries.from_coeffs(a={1: 1.0}, a0=0.3, b0=0.2)
    report = theorem_gate(h, 5.0)  # modulus 1.609 > 3/2, neither class
    assert report.verdict == "not-applicable"
    assert report.rule == "none"


def test_gate_rescales_unnormalized_input():
    doubled = scale_rotate(CRITICAL, 2.0)
    report = theorem_gate(doubled, 2.0)
    assert report.inner_scale == pytest.approx(2.0)
    assert report.measured == pytest.approx(1.25)
    assert report.verdict == "pass"


def test_gate_margin_zero_for_rotated_extremal():
    for lam in (-0.4, 0.2, 1.0):
        h = scale_rotate(extremal_map(lam), complex(math.cos(0.3), math.sin(0.3)))
        report = theorem_gate(h, 2.2)
        assert abs(report.margin) < 1e-12


# ---------------------------------------------------------------------------
# uniqueness probe
# ---------------------------------------------------------------------------

def test_uniqueness_probe_quadratic_gap():
    report = uniqueness_probe(E)
    assert report.zero_eps_gap < 1e-13
    assert min(report.gaps) > 0.0
    assert report.loglog_slope == pytest.approx(2.0, abs=0.1)
    assert report.const_term_breaks_class


def test_gate_degenerate_series_not_applicable():
    pure_log = HarmonicSeries.from_coeffs(N=1, a0=1.0)
    report = theorem_gate(pure_log, 2.0)
    assert report.verdict == "not-applicable"
    assert report.inner_scale == 0.0
