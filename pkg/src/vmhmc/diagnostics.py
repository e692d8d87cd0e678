"""Autocorrelation, integrated autocorrelation time, RESS and distributional
validation statistics.

The tau estimator follows Geyer's initial monotone positive pair-sum rule:
naive truncation at the first negative autocorrelation would destroy exactly
the antithetic (RESS > 1) signal these chains produce, because their odd-lag
autocorrelations are negative by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vmhmc.special import VonMisesParams, bin_probability, vm_log_density, wrap_angle_array

TAU_FLOOR = 1e-6


class DegenerateSeriesError(ValueError):
    """A constant series has no autocorrelation structure."""


@dataclass(frozen=True)
class EssResult:
    """Autocorrelation sequence, integrated autocorrelation time and RESS.

    ``cutoff`` is the last lag included in the Geyer sum (0 if no pair was
    kept). ``ress`` is stored as 1/tau exactly.
    """

    acf: np.ndarray
    tau: float
    ress: float
    cutoff: int


# direct O(N*L) lag loop below this, FFT above: slowly mixing chains (for
# example near-resonant travel times at small concentration) push the Geyer
# scan out to the N/2 cap, where the direct sum turns quadratic
_FFT_LAG_THRESHOLD = 256


def autocorrelation(series, max_lag: int) -> np.ndarray:
    """Sample autocorrelations rho_0..rho_max_lag (demeaned, N-normalized)."""
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 4:
        raise ValueError("series must be one-dimensional with length >= 4")
    n = x.size
    if not (1 <= max_lag < n):
        raise ValueError(f"need 1 <= max_lag < len(series), got {max_lag!r}")
    x = x - x.mean()
    g0 = float(x @ x) / n
    if g0 == 0.0:
        raise DegenerateSeriesError("series is constant (zero variance)")
    if max_lag <= _FFT_LAG_THRESHOLD:
        acf = np.empty(max_lag + 1)
        acf[0] = 1.0
        for lag in range(1, max_lag + 1):
            acf[lag] = float(x[:-lag] @ x[lag:]) / n / g0
        return acf
    m = 1
    while m < 2 * n:
        m <<= 1
    f = np.fft.rfft(x, m)
    cov = np.fft.irfft(np.abs(f) ** 2, m)[: max_lag + 1] / n
    acf = cov / cov[0]
    acf[0] = 1.0
    return acf


def _geyer(acf: np.ndarray) -> tuple[float, int, bool]:
    """Pair-sum rule. Returns (tau, cutoff, hit_nonpositive_pair)."""
    npairs = len(acf) // 2
    total = 0.0
    prev = math.inf
    kept = 0
    terminated = False
    for m in range(npairs):
        gamma = acf[2 * m] + acf[2 * m + 1]
        if gamma <= 0.0:
            terminated = True
            break
        if gamma > prev:
            gamma = prev
        prev = gamma
        total += gamma
        kept += 1
    tau = -1.0 + 2.0 * total
    if tau < TAU_FLOOR:
        tau = TAU_FLOOR
    cutoff = 2 * kept - 1 if kept else 0
    return tau, cutoff, terminated


def geyer_tau(acf) -> tuple[float, int]:
    """Integrated autocorrelation time by Geyer's initial monotone rule.

    Pair sums Gamma_m = rho_2m + rho_{2m+1}; the initial strictly positive
    run is kept, forced nonincreasing, and tau = -1 + 2*sum(Gamma), floored
    at a tiny positive value so adversarial alternating inputs stay finite.
    """
    acf = np.asarray(acf, dtype=float)
    if acf.ndim != 1 or acf.size == 0 or acf[0] != 1.0:
        raise ValueError("acf must be one-dimensional with acf[0] == 1")
    tau, cutoff, _ = _geyer(acf)
    return tau, cutoff


def ress(series) -> EssResult:
    """Relative effective sample size 1/tau of a scalar chain.

    The autocorrelation is computed incrementally (O(N * cutoff)) and grown
    until the Geyer rule terminates on its own, capped at N/2 lags.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 4:
        raise ValueError("series must be one-dimensional with length >= 4")
    cap = x.size // 2
    max_lag = min(64, cap)
    while True:
        acf = autocorrelation(x, max_lag)
        tau, cutoff, terminated = _geyer(acf)
        if terminated or max_lag == cap:
            break
        max_lag = min(4 * max_lag, cap)
    return EssResult(acf=acf, tau=tau, ress=1.0 / tau, cutoff=cutoff)


def circular_moments(samples) -> tuple[float, float, float, float]:
    """Sample means of cos and sin with autocorrelation-adjusted errors.

    Standard errors are inflated by sqrt(tau) of the respective series; a
    constant series has an exact mean and standard error 0.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("samples must be one-dimensional and nonempty")
    cos_x = np.cos(x)
    sin_x = np.sin(x)

    def adjusted_se(v: np.ndarray) -> float:
        if v.size < 2:
            return 0.0
        sd = float(v.std(ddof=1))
        if sd == 0.0:
            return 0.0
        se = sd / math.sqrt(v.size)
        if v.size >= 4:
            se *= math.sqrt(ress(v).tau)
        return se

    return (
        float(cos_x.mean()),
        float(sin_x.mean()),
        adjusted_se(cos_x),
        adjusted_se(sin_x),
    )


def _equal_mass_edges(params: VonMisesParams, bins: int) -> np.ndarray:
    """Quantile bin edges so every bin carries probability ~1/bins.

    Edges come from interpolating a fine cumulative-trapezoid CDF grid; the
    expected counts downstream are recomputed by quadrature between the
    edges, so edge placement accuracy does not bias the test.
    """
    m = 1 << 14
    xs = np.linspace(-math.pi, math.pi, m + 1)
    log_c = vm_log_density(params.nu, params) - params.kappa  # -log(2 pi I0)
    pdf = np.exp(params.kappa * np.cos(xs - params.nu) + log_c)
    steps = 0.5 * (pdf[1:] + pdf[:-1]) * np.diff(xs)
    cdf = np.concatenate(([0.0], np.cumsum(steps)))
    cdf /= cdf[-1]
    targets = np.arange(1, bins) / bins
    edges = np.interp(targets, cdf, xs)
    edges = np.concatenate(([-math.pi], edges, [math.pi]))
    if np.any(np.diff(edges) <= 0.0):
        raise ValueError(
            f"could not place {bins} strictly increasing quantile edges at kappa={params.kappa}"
        )
    return edges


def chisq_gof(samples, params: VonMisesParams, bins: int) -> tuple[float, int]:
    """Pearson goodness-of-fit statistic against the analytic density.

    Uses ``bins`` equal-probability bins (quantile edges) so high
    concentrations keep every expected count well populated; dof = bins - 1.
    """
    if not (isinstance(bins, (int, np.integer)) and bins >= 10):
        raise ValueError(f"bins must be an integer >= 10, got {bins!r}")
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("samples must be one-dimensional and nonempty")
    edges = _equal_mass_edges(params, int(bins))
    expected = x.size * np.array(
        [bin_probability(float(lo), float(hi), params) for lo, hi in zip(edges[:-1], edges[1:])]
    )
    if expected.min() < 5.0:
        raise ValueError(
            f"underpopulated bins: min expected count {expected.min():.3g} < 5; "
            "use more samples or fewer bins"
        )
    counts, _ = np.histogram(wrap_angle_array(x), edges)
    statistic = float(((counts - expected) ** 2 / expected).sum())
    return statistic, int(bins) - 1
