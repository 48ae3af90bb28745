"""Truncated Laurent-log series for complex harmonic functions on an annulus.

Every complex harmonic function on the punctured plane decomposes into
angular modes

    h(z) = a0*log|z| + b0 + sum_{n != 0} (a_n * z**n + b_n * conj(z)**(-n)),

and any finite truncation of this sum is itself exactly harmonic, whatever
the coefficients.  This module stores the coefficients, evaluates h and its
first derivatives in polar coordinates (including the Wirtinger derivatives
h_z and h_zbar), and provides the one-parameter extremal family

    h^lam(z) = (z + lam/conj(z)) / (1 + lam),    -1 < lam <= 1,

whose member for lam = 1 is the critical map (z + 1/conj(z)) / 2 with
Jacobian vanishing on the unit circle.  A stable JSON encoding of the
coefficient data is included.

All types are immutable and all functions are pure; everything is safe to
call concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Mapping, NamedTuple

import numpy as np

from .errors import (
    InternalInconsistencyError,
    NumericOverflowError,
    ParameterDomainError,
)

# Guard band keeping 1/(1+lam) finite near the excluded endpoint lam = -1.
LAMBDA_MIN = -1.0 + 1e-9

# Agreement tolerance for the paired formulas in jacobian / grad_norm_sq.
_CONSISTENCY_RTOL = 1e-12


def _as_coeff_array(values, N: int, name: str) -> np.ndarray:
    arr = np.zeros(N, dtype=np.complex128)
    if values is not None:
        vals = np.asarray(values, dtype=np.complex128)
        if vals.ndim != 1 or vals.size > N:
            raise ParameterDomainError(
                f"{name} must be a 1-d sequence of at most N={N} coefficients"
            )
        arr[: vals.size] = vals
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ParameterDomainError(f"{name} contains a non-finite coefficient")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class HarmonicSeries:
    """Coefficients of a truncated Laurent-log series.

    Attributes:
        N: truncation order; modes n with 1 <= |n| <= N may be nonzero.
        a_pos, b_pos: coefficients a_n, b_n for n = 1..N (index i holds n=i+1).
        a_neg, b_neg: coefficients a_n, b_n for n = -1..-N (index i holds
            n = -(i+1)).
        a0: coefficient of log|z|.
        b0: constant term.
    """

    N: int
    a_pos: np.ndarray = field(default=None)  # type: ignore[assignment]
    b_pos: np.ndarray = field(default=None)  # type: ignore[assignment]
    a_neg: np.ndarray = field(default=None)  # type: ignore[assignment]
    b_neg: np.ndarray = field(default=None)  # type: ignore[assignment]
    a0: complex = 0j
    b0: complex = 0j

    def __post_init__(self) -> None:
        if self.N < 0:
            raise ParameterDomainError("truncation order N must be >= 0")
        for name in ("a_pos", "b_pos", "a_neg", "b_neg"):
            object.__setattr__(
                self, name, _as_coeff_array(getattr(self, name), self.N, name)
            )
        a0 = complex(self.a0)
        b0 = complex(self.b0)
        if not (math.isfinite(a0.real) and math.isfinite(a0.imag)
                and math.isfinite(b0.real) and math.isfinite(b0.imag)):
            raise ParameterDomainError("a0 and b0 must be finite")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "b0", b0)

    @classmethod
    def from_coeffs(
        cls,
        N: int | None = None,
        a: Mapping[int, complex] | None = None,
        b: Mapping[int, complex] | None = None,
        a0: complex = 0j,
        b0: complex = 0j,
    ) -> "HarmonicSeries":
        """Build a series from sparse {mode: coefficient} mappings.

        N defaults to the largest |n| present in a or b.
        """
        a = dict(a or {})
        b = dict(b or {})
        if 0 in a or 0 in b:
            raise ParameterDomainError(
                "mode 0 lives in a0 (log term) and b0 (constant), not in a/b"
            )
        modes = [abs(n) for n in (*a, *b)]
        inferred = max(modes) if modes else 0
        if N is None:
            N = inferred
        if inferred > N:
            raise ParameterDomainError(f"mode {inferred} exceeds N={N}")
        a_pos = np.zeros(N, dtype=np.complex128)
        b_pos = np.zeros(N, dtype=np.complex128)
        a_neg = np.zeros(N, dtype=np.complex128)
        b_neg = np.zeros(N, dtype=np.complex128)
        for n, val in a.items():
            (a_pos if n > 0 else a_neg)[abs(n) - 1] = val
        for n, val in b.items():
            (b_pos if n > 0 else b_neg)[abs(n) - 1] = val
        return cls(N=N, a_pos=a_pos, b_pos=b_pos, a_neg=a_neg, b_neg=b_neg,
                   a0=a0, b0=b0)

    @cached_property
    def mode_numbers(self) -> np.ndarray:
        """Nonzero mode indices in the fixed order 1..N, -1..-N."""
        ns = np.concatenate([np.arange(1, self.N + 1), -np.arange(1, self.N + 1)])
        ns.setflags(write=False)
        return ns

    @cached_property
    def a_modes(self) -> np.ndarray:
        arr = np.concatenate([self.a_pos, self.a_neg])
        arr.setflags(write=False)
        return arr

    @cached_property
    def b_modes(self) -> np.ndarray:
        arr = np.concatenate([self.b_pos, self.b_neg])
        arr.setflags(write=False)
        return arr

    def coeff(self, n: int) -> tuple[complex, complex]:
        """Return (a_n, b_n) for a nonzero mode n with |n| <= N."""
        if n == 0 or abs(n) > self.N:
            raise IndexError(f"mode {n} not stored for a series with N={self.N}")
        if n > 0:
            return complex(self.a_pos[n - 1]), complex(self.b_pos[n - 1])
        return complex(self.a_neg[-n - 1]), complex(self.b_neg[-n - 1])

    def modes(self) -> Iterator[tuple[int, complex, complex]]:
        """Yield (n, a_n, b_n) for every stored nonzero mode."""
        for n, a, b in zip(self.mode_numbers, self.a_modes, self.b_modes):
            yield int(n), complex(a), complex(b)

    def with_coeff(
        self,
        n: int,
        a: complex | None = None,
        b: complex | None = None,
    ) -> "HarmonicSeries":
        """Return a copy with a_n and/or b_n replaced (immutably)."""
        if n == 0:
            raise ParameterDomainError("use replace of a0/b0 for the zero mode")
        N = max(self.N, abs(n))
        a_map = {m: an for m, an, _ in self.modes() if an != 0}
        b_map = {m: bn for m, _, bn in self.modes() if bn != 0}
        if a is not None:
            a_map[n] = a
        if b is not None:
            b_map[n] = b
        return HarmonicSeries.from_coeffs(N=N, a=a_map, b=b_map,
                                          a0=self.a0, b0=self.b0)


@dataclass(frozen=True)
class Annulus:
    """The ring domain 1 < |z| < R, inner radius normalized to 1."""

    R: float

    def __post_init__(self) -> None:
        if not (self.R > 1.0 and math.isfinite(self.R)):
            raise ParameterDomainError("outer radius R must satisfy R > 1")

    @property
    def modulus(self) -> float:
        """Conformal modulus log(R)."""
        return math.log(self.R)


@dataclass(frozen=True)
class PolarPoint:
    """A point rho * exp(i*theta) of the punctured plane, rho > 0."""

    rho: float
    theta: float

    def __post_init__(self) -> None:
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise ParameterDomainError("rho must be positive and finite")


class CircleFields(NamedTuple):
    """Values and first polar derivatives of a series along one circle."""

    values: np.ndarray
    d_rho: np.ndarray
    d_theta: np.ndarray


class Derivatives(NamedTuple):
    h_rho: complex
    h_theta: complex
    h_z: complex
    h_zbar: complex


def circle_fields(h: HarmonicSeries, rho: float, thetas: np.ndarray) -> CircleFields:
    """Evaluate h, dh/drho and dh/dtheta at the angles `thetas` on C_rho.

    Differentiation is termwise on the series, so the derivatives are exact
    up to rounding.  This is the vectorized workhorse behind the pointwise
    API and all circle quadratures.
    """
    if rho <= 0.0:
        raise ParameterDomainError("rho must be positive")
    thetas = np.asarray(thetas, dtype=np.float64)
    log_rho = math.log(rho)
    zero = h.a0 * log_rho + h.b0
    zero_rho = h.a0 / rho
    if h.N == 0:
        ones = np.ones_like(thetas, dtype=np.complex128)
        return CircleFields(zero * ones, zero_rho * ones, np.zeros_like(ones))
    ns = h.mode_numbers
    # Radial factors c_n(rho) = a_n rho^n + b_n rho^-n and their derivatives.
    # Overflow is tolerated here (it yields inf/nan values); the pointwise
    # API turns non-finite results into NumericOverflowError.
    with np.errstate(over="ignore", invalid="ignore"):
        pow_pos = rho ** ns.astype(np.float64)
        pow_neg = rho ** (-ns.astype(np.float64))
        c = h.a_modes * pow_pos + h.b_modes * pow_neg
        c_rho = ns * (h.a_modes * pow_pos - h.b_modes * pow_neg) / rho
        phases = np.exp(1j * np.outer(thetas, ns))
        values = phases @ c + zero
        d_rho = phases @ c_rho + zero_rho
        d_theta = phases @ (1j * ns * c)
    return CircleFields(values, d_rho, d_theta)


def wirtinger_from_polar(
    rho: float, thetas: np.ndarray, d_rho: np.ndarray, d_theta: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Convert polar derivatives to the Wirtinger pair (h_z, h_zbar).

    h_z    = exp(-i theta) (h_rho - i h_theta / rho) / 2
    h_zbar = exp(+i theta) (h_rho + i h_theta / rho) / 2
    """
    phase = np.exp(1j * np.asarray(thetas, dtype=np.float64))
    hz = 0.5 * (d_rho - 1j * d_theta / rho) / phase
    hzbar = 0.5 * (d_rho + 1j * d_theta / rho) * phase
    return hz, hzbar


def evaluate(h: HarmonicSeries, p: PolarPoint) -> complex:
    """Value of the series at one polar point.

    Raises NumericOverflowError if the result is not finite (possible only
    through coefficient/radius overflow).
    """
    val = complex(circle_fields(h, p.rho, np.array([p.theta])).values[0])
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise NumericOverflowError(f"series value overflowed at {p}")
    return val


def derivatives(h: HarmonicSeries, p: PolarPoint) -> Derivatives:
    """First derivatives (h_rho, h_theta, h_z, h_zbar) at one point."""
    f = circle_fields(h, p.rho, np.array([p.theta]))
    hz, hzbar = wirtinger_from_polar(p.rho, np.array([p.theta]), f.d_rho, f.d_theta)
    return Derivatives(complex(f.d_rho[0]), complex(f.d_theta[0]),
                       complex(hz[0]), complex(hzbar[0]))


def jacobian_circle(h: HarmonicSeries, rho: float, thetas: np.ndarray) -> np.ndarray:
    """Jacobian determinant |h_z|^2 - |h_zbar|^2 along a circle (fast path)."""
    f = circle_fields(h, rho, thetas)
    return (np.conj(f.d_rho) * f.d_theta).imag / rho


def jacobian(h: HarmonicSeries, p: PolarPoint) -> float:
    """Jacobian determinant at a point, computed two ways.

    Returns |h_z|^2 - |h_zbar|^2 and checks it against Im(conj(h_rho) *
    h_theta) / rho; the two are algebraically identical, so disagreement
    beyond 1e-12 relative to the gradient magnitude indicates a numerical
    fault and raises InternalInconsistencyError.
    """
    d = derivatives(h, p)
    j_wirtinger = abs(d.h_z) ** 2 - abs(d.h_zbar) ** 2
    j_polar = (np.conj(d.h_rho) * d.h_theta).imag / p.rho
    scale = max(1.0, abs(d.h_z) ** 2 + abs(d.h_zbar) ** 2)
    if abs(j_wirtinger - j_polar) > _CONSISTENCY_RTOL * scale:
        raise InternalInconsistencyError(
            f"jacobian formulas disagree at {p}: {j_wirtinger} vs {j_polar}"
        )
    return float(j_wirtinger)


def grad_norm_sq_circle(h: HarmonicSeries, rho: float, thetas: np.ndarray) -> np.ndarray:
    """Squared Hilbert-Schmidt norm |h_rho|^2 + |h_theta|^2 / rho^2 on C_rho."""
    f = circle_fields(h, rho, thetas)
    return np.abs(f.d_rho) ** 2 + np.abs(f.d_theta) ** 2 / rho**2


def grad_norm_sq(h: HarmonicSeries, p: PolarPoint) -> float:
    """Squared Hilbert-Schmidt norm of the differential at a point.

    Returns |h_rho|^2 + |h_theta|^2/rho^2 and checks the equal form
    2(|h_z|^2 + |h_zbar|^2) to 1e-12 relative.
    """
    d = derivatives(h, p)
    g_polar = abs(d.h_rho) ** 2 + abs(d.h_theta) ** 2 / p.rho**2
    g_wirt = 2.0 * (abs(d.h_z) ** 2 + abs(d.h_zbar) ** 2)
    scale = max(1.0, g_polar)
    if abs(g_polar - g_wirt) > _CONSISTENCY_RTOL * scale:
        raise InternalInconsistencyError(
            f"gradient norm formulas disagree at {p}: {g_polar} vs {g_wirt}"
        )
    return float(g_polar)


def extremal_map(lam: float) -> HarmonicSeries:
    """The extremal map h^lam(z) = (z + lam/conj(z)) / (1 + lam).

    Its only nonzero mode is n = 1 with a_1 = 1/(1+lam), b_1 = lam/(1+lam).
    lam = 0 gives the identity and lam = 1 the critical map whose Jacobian
    vanishes on the unit circle.
    """
    if not (LAMBDA_MIN < lam <= 1.0):
        raise ParameterDomainError(f"lambda must lie in (-1, 1], got {lam}")
    return HarmonicSeries.from_coeffs(
        N=1, a={1: 1.0 / (1.0 + lam)}, b={1: lam / (1.0 + lam)}
    )


def lambda_from_radii(R: float, R_star: float) -> float:
    """Parameter lam with mean outer radius R_star for h^lam on A(1, R).

    lam = (R^2 - R*R_star) / (R*R_star - 1).  Requires R > 1 and R_star at
    or above the sharp lower bound (R + 1/R)/2, where lam = 1 is attained.
    """
    if not R > 1.0:
        raise ParameterDomainError("R must exceed 1")
    critical = 0.5 * (R + 1.0 / R)
    lam = (R * R - R * R_star) / (R * R_star - 1.0)
    if lam > 1.0 + 1e-12:
        raise ParameterDomainError(
            f"R_star={R_star} lies below the admissible minimum {critical}"
        )
    if lam <= LAMBDA_MIN:
        raise ParameterDomainError(f"R_star={R_star} is too large for R={R}")
    return min(lam, 1.0)


def scale_rotate(h: HarmonicSeries, alpha: complex) -> HarmonicSeries:
    """Multiply every coefficient by alpha (h -> alpha * h)."""
    return HarmonicSeries(
        N=h.N,
        a_pos=h.a_pos * alpha,
        b_pos=h.b_pos * alpha,
        a_neg=h.a_neg * alpha,
        b_neg=h.b_neg * alpha,
        a0=h.a0 * alpha,
        b0=h.b0 * alpha,
    )


# ---------------------------------------------------------------------------
# JSON encoding.  Complex numbers are [re, im] pairs; arrays are indexed so
# that entry i of a_pos/b_pos holds mode n = i+1 and entry i of a_neg/b_neg
# holds mode n = -(i+1).  Missing arrays mean zero.  NaN and infinity are
# rejected in both directions, and floats are written in round-trip form so
# that save/load is byte-stable.
# ---------------------------------------------------------------------------

_JSON_KEYS = ("a_pos", "b_pos", "a_neg", "b_neg")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _unpair(v, name: str) -> complex:
    if (not isinstance(v, (list, tuple))) or len(v) != 2:
        raise ParameterDomainError(f"{name} must be a [re, im] pair")
    re, im = float(v[0]), float(v[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParameterDomainError(f"{name} must be finite")
    return complex(re, im)


def to_json_dict(h: HarmonicSeries) -> dict:
    """Plain-JSON representation of the series."""
    out: dict = {"N": int(h.N), "a0": _pair(h.a0), "b0": _pair(h.b0)}
    for key in _JSON_KEYS:
        out[key] = [_pair(complex(z)) for z in getattr(h, key)]
    return out


def from_json_dict(data: Mapping) -> HarmonicSeries:
    """Inverse of to_json_dict; tolerates missing (= zero) arrays."""
    if "N" not in data:
        raise ParameterDomainError("series JSON must contain N")
    N = int(data["N"])
    kwargs: dict = {"N": N}
    for key in _JSON_KEYS:
        entries = data.get(key, [])
        kwargs[key] = np.array(
            [_unpair(v, key) for v in entries], dtype=np.complex128
        )
    kwargs["a0"] = _unpair(data["a0"], "a0") if "a0" in data else 0j
    kwargs["b0"] = _unpair(data["b0"], "b0") if "b0" in data else 0j
    return HarmonicSeries(**kwargs)


def dumps_series(h: HarmonicSeries) -> str:
    """Deterministic JSON text for the series."""
    return json.dumps(to_json_dict(h), indent=2, allow_nan=False) + "\n"


def save_series(h: HarmonicSeries, path: str | Path) -> None:
    Path(path).write_text(dumps_series(h), encoding="utf-8")


def load_series(path: str | Path) -> HarmonicSeries:
    with open(path, encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))
