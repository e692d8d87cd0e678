"""Scalar special functions and circular utilities for the von Mises density.

All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

# Crossover between the power series and the asymptotic expansion for the
# modified Bessel evaluations. Both branches deliver >= 12 significant digits
# on either side of this point (the asymptotic error floor at x=15 is ~1e-13).
BESSEL_CROSSOVER = 15.0
_SERIES_TOL = 1e-17


@dataclass(frozen=True)
class VonMisesParams:
    """Parameters of a von Mises distribution on the circle.

    Parameters
    ----------
    kappa : float
        Concentration, strictly positive.
    nu : float
        Location in radians, within the wrap convention interval [-pi, pi).
    """

    kappa: float
    nu: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0.0):
            raise ValueError(f"kappa must be positive and finite, got {self.kappa!r}")
        if not math.isfinite(self.nu):
            raise ValueError(f"nu must be finite, got {self.nu!r}")
        if not -math.pi <= self.nu < math.pi:
            raise ValueError(f"nu must lie in [-pi, pi), got {self.nu!r}")


def _i0_series(x: float) -> float:
    # sum_k (x/2)^(2k) / (k!)^2; all terms positive, converges for any x
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 1
    while term > _SERIES_TOL * total:
        term *= q / (k * k)
        total += term
        k += 1
    return total


def _i1_series(x: float) -> float:
    # sum_k (x/2)^(2k+1) / (k! (k+1)!)
    q = 0.25 * x * x
    term = 0.5 * x
    total = term
    k = 1
    while abs(term) > _SERIES_TOL * abs(total):
        term *= q / (k * (k + 1))
        total += term
        k += 1
    return total


def _iv_asymptotic_factor(x: float, mu: float) -> float:
    # I_v(x) ~ e^x / sqrt(2 pi x) * P(x) with mu = 4 v^2; this returns P(x),
    # summed to its smallest term (error floor ~ e^(-2x), fine for x >= 15)
    term = 1.0
    total = 1.0
    k = 1
    while True:
        nxt = term * ((2 * k - 1) ** 2 - mu) / (8.0 * k * x)
        if abs(nxt) >= abs(term) or k > 60:
            break
        total += nxt
        term = nxt
        if abs(nxt) < _SERIES_TOL * abs(total):
            break
        k += 1
    return total


def _i0_asymptotic(x: float) -> float:
    return math.exp(x) / math.sqrt(TWO_PI * x) * _iv_asymptotic_factor(x, 0.0)


def _check_bessel_arg(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"argument must be a finite nonnegative real, got {x!r}")
    return x


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order 0.

    Power series below the crossover, asymptotic expansion above; accurate to
    at least 12 significant digits over [0, 50].
    """
    x = _check_bessel_arg(x)
    if x < BESSEL_CROSSOVER:
        return _i0_series(x)
    return _i0_asymptotic(x)


def log_bessel_i0(x: float) -> float:
    """log I0(x), overflow-safe for large arguments."""
    x = _check_bessel_arg(x)
    if x < BESSEL_CROSSOVER:
        return math.log(_i0_series(x))
    return x - 0.5 * math.log(TWO_PI * x) + math.log(_iv_asymptotic_factor(x, 0.0))


def bessel_i1(x: float) -> float:
    """Modified Bessel function of the first kind, order 1."""
    x = _check_bessel_arg(x)
    if x < BESSEL_CROSSOVER:
        return _i1_series(x)
    return math.exp(x) / math.sqrt(TWO_PI * x) * _iv_asymptotic_factor(x, 4.0)


def mean_resultant_length(kappa: float) -> float:
    """First circular moment magnitude E[cos(x - nu)] = I1(kappa)/I0(kappa).

    Strictly increasing in kappa and bounded in (0, 1).
    """
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise ValueError(f"kappa must be positive and finite, got {kappa!r}")
    if kappa < BESSEL_CROSSOVER:
        return _i1_series(kappa) / _i0_series(kappa)
    # shared e^x / sqrt(2 pi x) prefactor cancels in the ratio
    return _iv_asymptotic_factor(kappa, 4.0) / _iv_asymptotic_factor(kappa, 0.0)


def wrap_angle(x: float) -> float:
    """Wrap a finite angle into the half-open interval [-pi, pi)."""
    if not math.isfinite(x):
        raise ValueError(f"angle must be finite, got {x!r}")
    r = x - TWO_PI * math.floor((x + math.pi) / TWO_PI)
    # rounding can land exactly on either boundary
    if r < -math.pi:
        r += TWO_PI
    elif r >= math.pi:
        r -= TWO_PI
    return r


def wrap_angle_array(x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`wrap_angle` (same arithmetic, elementwise)."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("angles must be finite")
    r = x - TWO_PI * np.floor((x + math.pi) / TWO_PI)
    r = np.where(r < -math.pi, r + TWO_PI, r)
    r = np.where(r >= math.pi, r - TWO_PI, r)
    return r


def vm_log_density(x: float, params: VonMisesParams) -> float:
    """Log density of the von Mises distribution at angle ``x``."""
    return params.kappa * math.cos(x - params.nu) - math.log(TWO_PI) - log_bessel_i0(params.kappa)


def bin_probability(lo: float, hi: float, params: VonMisesParams) -> float:
    """Probability mass of ``[lo, hi)`` under the von Mises density.

    Composite Simpson quadrature with 256 subintervals; the integrand is
    smooth so this is far more accurate than any downstream test needs.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("interval endpoints must be finite")
    if not (-math.pi <= lo < hi <= math.pi):
        raise ValueError(f"need -pi <= lo < hi <= pi, got [{lo!r}, {hi!r})")
    n = 256
    xs = lo + (hi - lo) * np.arange(n + 1) / n
    log_norm = math.log(TWO_PI) + log_bessel_i0(params.kappa)
    f = np.exp(params.kappa * np.cos(xs - params.nu) - log_norm)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.dot(w, f) * (hi - lo) / (3.0 * n))
