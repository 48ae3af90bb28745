"""Closed-form circular means, quadratic means and variance.

Modes of a truncated series are orthogonal over every circle C_rho, so the
quadratic mean of h decomposes as a finite sum

    U(rho) = sum_n U_n(rho),
    U_n(rho) = |a_n rho^n + b_n rho^-n|^2           (n != 0)
    U_0(rho) = |a0 log(rho) + b0|^2,

and the variance V(rho) = U(rho) - |mean(h)|^2 is the same sum without the
n = 0 term.  Everything here is exact closed form (value plus first and
second derivative in rho), packaged in RadialProfile objects; the quadrature
module provides the independent numerical oracle for these formulas.

Because a finite series is smooth across the unit circle, the inner-circle
limits (mean, mean normal derivative, initial speed) are plain evaluations
at rho = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateSeriesError
from .series import HarmonicSeries

CLASS_TOL = 1e-12


@dataclass(frozen=True)
class RadialProfile:
    """A scalar function of rho > 0 with closed-form derivatives."""

    label: str
    value: Callable[[np.ndarray | float], np.ndarray | float]
    deriv1: Callable[[np.ndarray | float], np.ndarray | float]
    deriv2: Callable[[np.ndarray | float], np.ndarray | float]


def _sum_profile(h: HarmonicSeries, label: str, include_zero: bool,
                 only_mode: int | None = None) -> RadialProfile:
    """Profile of a sum of mode means; `only_mode` restricts to one mode."""
    if only_mode is None:
        ns = h.mode_numbers.astype(np.float64)
        a, b = h.a_modes, h.b_modes
        with_zero = include_zero
    elif only_mode == 0:
        ns = np.zeros(0)
        a = b = np.zeros(0, dtype=np.complex128)
        with_zero = True
    else:
        an, bn = h.coeff(only_mode)
        ns = np.array([float(only_mode)])
        a, b = np.array([an]), np.array([bn])
        with_zero = False
    A = np.abs(a) ** 2
    B = np.abs(b) ** 2
    C = 2.0 * (a * np.conj(b)).real
    a0 = h.a0 if with_zero else 0j
    b0 = h.b0 if with_zero else 0j

    def value(rho):
        r = np.asarray(rho, dtype=np.float64)
        out = np.zeros_like(r)
        if ns.size:
            rp = r[..., None] ** (2.0 * ns)
            rn = r[..., None] ** (-2.0 * ns)
            out = out + np.sum(A * rp + B * rn + C, axis=-1)
        if with_zero:
            c = a0 * np.log(r) + b0
            out = out + np.abs(c) ** 2
        return out if out.shape else float(out)

    def deriv1(rho):
        r = np.asarray(rho, dtype=np.float64)
        out = np.zeros_like(r)
        if ns.size:
            rp = r[..., None] ** (2.0 * ns - 1.0)
            rn = r[..., None] ** (-2.0 * ns - 1.0)
            out = out + np.sum(2.0 * ns * (A * rp - B * rn), axis=-1)
        if with_zero:
            c = a0 * np.log(r) + b0
            out = out + 2.0 * (np.conj(a0) * c).real / r
        return out if out.shape else float(out)

    def deriv2(rho):
        r = np.asarray(rho, dtype=np.float64)
        out = np.zeros_like(r)
        if ns.size:
            rp = r[..., None] ** (2.0 * ns - 2.0)
            rn = r[..., None] ** (-2.0 * ns - 2.0)
            out = out + np.sum(
                2.0 * ns * (2.0 * ns - 1.0) * A * rp
                + 2.0 * ns * (2.0 * ns + 1.0) * B * rn,
                axis=-1,
            )
        if with_zero:
            c = a0 * np.log(r) + b0
            out = out + 2.0 * (np.abs(a0) ** 2 - (np.conj(a0) * c).real) / r**2
        return out if out.shape else float(out)

    return RadialProfile(label=label, value=value, deriv1=deriv1, deriv2=deriv2)


def quadratic_mean_mode(h: HarmonicSeries, n: int) -> RadialProfile:
    """Profile of the quadratic mean of the single mode n (|n| <= N).

    Mode 0 gives |a0 log(rho) + b0|^2.  Raises IndexError for |n| > N.
    """
    if n != 0 and abs(n) > h.N:
        raise IndexError(f"mode {n} exceeds truncation order {h.N}")
    if n == 0:
        return _sum_profile(h, "U_0", include_zero=True, only_mode=0)
    return _sum_profile(h, f"U_{n}", include_zero=False, only_mode=n)


def quadratic_mean_profile(h: HarmonicSeries) -> RadialProfile:
    """Quadratic mean U(rho) of |h|^2 over C_rho, all modes included."""
    return _sum_profile(h, "U", include_zero=True)


def variance_profile(h: HarmonicSeries) -> RadialProfile:
    """Variance V(rho) = U(rho) - |circle mean|^2 (the n != 0 part of U)."""
    return _sum_profile(h, "V", include_zero=False)


def variance_deriv2_termwise(h: HarmonicSeries, rho) -> np.ndarray | float:
    """Second derivative of the variance by the explicit termwise formula

        (2/rho^2) * sum_n [ n(2n-1)|a_n|^2 rho^(2n) + n(2n+1)|b_n|^2 rho^(-2n) ],

    every term of which is nonnegative.  Used as a cross-check against the
    generic profile derivative.
    """
    r = np.asarray(rho, dtype=np.float64)
    if h.N == 0:
        out = np.zeros_like(r)
        return out if out.shape else 0.0
    ns = h.mode_numbers.astype(np.float64)
    A = np.abs(h.a_modes) ** 2
    B = np.abs(h.b_modes) ** 2
    rp = r[..., None] ** (2.0 * ns)
    rn = r[..., None] ** (-2.0 * ns)
    out = (2.0 / r**2) * np.sum(
        ns * (2.0 * ns - 1.0) * A * rp + ns * (2.0 * ns + 1.0) * B * rn, axis=-1
    )
    return out if out.shape else float(out)


def inner_mean(h: HarmonicSeries) -> complex:
    """Limit of the circle mean of h at the inner circle, which is b0."""
    return h.b0


def normal_mean_coeff(h: HarmonicSeries) -> complex:
    """Limit of the circle mean of dh/drho at the inner circle, which is a0."""
    return h.a0


def is_class_D(h: HarmonicSeries, tol: float = CLASS_TOL) -> bool:
    """Vanishing inner-circle average (Dirichlet-type normalization)."""
    return abs(h.b0) <= tol


def is_class_N(h: HarmonicSeries, tol: float = CLASS_TOL) -> bool:
    """Vanishing average normal derivative (Neumann-type normalization)."""
    return abs(h.a0) <= tol


def initial_speed(h: HarmonicSeries) -> float:
    """Speed of the circle evolution at the inner circle.

    Equals dU/drho(1) / (2 sqrt(U(1))), the derivative at rho = 1 of the
    mean radius sqrt(U(rho)).  For the extremal map h^lam this is
    (1 - lam)/(1 + lam); the critical map starts at speed zero and the
    identity at speed one.
    """
    U = quadratic_mean_profile(h)
    u1 = float(U.value(1.0))
    if u1 <= 0.0:
        raise DegenerateSeriesError("U(1) = 0: inner circle degenerates")
    return float(U.deriv1(1.0)) / (2.0 * math.sqrt(u1))


def mean_outer_radius(h: HarmonicSeries, R: float) -> float:
    """Mean radius sqrt(U(R)) of the image of the outer circle."""
    return math.sqrt(float(quadratic_mean_profile(h).value(R)))
