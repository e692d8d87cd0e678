"""The four figure builders.

Rendering is read-only over its inputs and deterministic: the same inputs
produce the same image bytes.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from vmfigures.io import SweepTable

_SAVE_KW = {"dpi": 150, "metadata": {"Software": "vmhmc-figures"}}


def bessel_i0(x: float) -> float:
    # power series: fine for the plotting range of concentrations
    q = 0.25 * x * x
    term, total, k = 1.0, 1.0, 1
    while term > 1e-16 * total:
        term *= q / (k * k)
        total += term
        k += 1
    return total


def density_curve(kappa: float, nu: float, points: int = 721):
    xs = np.linspace(-math.pi, math.pi, points)
    return xs, np.exp(kappa * np.cos(xs - nu)) / (2.0 * math.pi * bessel_i0(kappa))


def acf(series: np.ndarray, max_lag: int) -> np.ndarray:
    x = np.asarray(series, float)
    x = x - x.mean()
    n = x.size
    g0 = float(x @ x) / n
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    for lag in range(1, max_lag + 1):
        out[lag] = float(x[:-lag] @ x[lag:]) / n / g0
    return out


def super_efficient_masks(table: SweepTable) -> tuple[np.ndarray, np.ndarray]:
    """Boolean (kappa, T) masks of super-efficient cells for sin and cos."""
    return table.ress_sin > 1.0, table.ress_cos > 1.0


def _heat(ax, table, values, title, cmap="viridis", log_color=False):
    norm = matplotlib.colors.LogNorm() if log_color else None
    mesh = ax.pcolormesh(table.times, table.kappas, values, shading="nearest",
                         cmap=cmap, norm=norm)
    ax.set_yscale("log")
    ax.set_xlabel("travel time T")
    ax.set_ylabel("concentration")
    ax.set_title(title)
    return mesh


def render_ress_heatmaps(table: SweepTable, out_path) -> None:
    """RESS heatmaps for sin/cos plus binary super-efficiency masks."""
    mask_sin, mask_cos = super_efficient_masks(table)
    fig, axes = plt.subplots(2, 2, figsize=(12, 8), constrained_layout=True)
    m = _heat(axes[0, 0], table, table.ress_sin, "RESS of sin(x)")
    fig.colorbar(m, ax=axes[0, 0])
    m = _heat(axes[1, 0], table, table.ress_cos, "RESS of cos(x)")
    fig.colorbar(m, ax=axes[1, 0])
    blue = matplotlib.colors.ListedColormap(["white", "tab:blue"])
    _heat(axes[0, 1], table, mask_sin.astype(float), "sin(x): RESS > 1", cmap=blue)
    _heat(axes[1, 1], table, mask_cos.astype(float), "cos(x): RESS > 1", cmap=blue)
    fig.savefig(out_path, **_SAVE_KW)
    plt.close(fig)


def render_trace_acf_hist(samples: np.ndarray, kappa: float, nu: float, out_path,
                          trace_len: int = 100, acf_lags: int = 25) -> None:
    """Sample trace, sin(x) autocorrelation and histogram vs analytic density."""
    fig, axes = plt.subplots(1, 3, figsize=(14, 4), constrained_layout=True)
    axes[0].plot(np.arange(min(trace_len, samples.size)), samples[:trace_len], lw=0.8,
                 marker=".", ms=3)
    axes[0].set_xlabel("iteration")
    axes[0].set_ylabel("x")
    axes[0].set_title(f"sample trace ({min(trace_len, samples.size)} iterations)")

    rho = acf(np.sin(samples), acf_lags)
    axes[1].bar(np.arange(acf_lags + 1), rho, color=np.where(rho >= 0, "tab:blue", "tab:red"))
    axes[1].axhline(0.0, color="black", lw=0.8)
    axes[1].set_xlabel("lag")
    axes[1].set_ylabel("autocorrelation of sin(x)")
    axes[1].set_title("sign-alternating autocorrelation")

    axes[2].hist(samples, bins=60, density=True, alpha=0.6, label="samples")
    xs, pdf = density_curve(kappa, nu)
    axes[2].plot(xs, pdf, "k-", lw=1.5, label="analytic density")
    axes[2].set_xlabel("x")
    axes[2].set_ylabel("density")
    axes[2].legend()
    axes[2].set_title(f"histogram vs density (concentration {kappa:g})")
    fig.savefig(out_path, **_SAVE_KW)
    plt.close(fig)


def optimal_curves_data(table: SweepTable):
    """Per-row argmax summaries: (T_star, best_ress) arrays over kappa."""
    idx = np.argmax(table.ress_sin, axis=1)
    t_star = table.times[idx]
    best = table.ress_sin[np.arange(table.kappas.size), idx]
    return t_star, best


def render_optimal_curves(table: SweepTable, baseline, out_path, kappa_focus: float = 4.0) -> None:
    """Efficiency vs T at one concentration, T*(kappa), best RESS, baseline."""
    base_k, base_rate = baseline
    t_star, best = optimal_curves_data(table)
    row = int(np.argmin(np.abs(table.kappas - kappa_focus)))
    fig, axes = plt.subplots(2, 2, figsize=(11, 8), constrained_layout=True)

    axes[0, 0].plot(table.times, table.ress_sin[row], "o-", ms=3)
    axes[0, 0].axhline(1.0, color="gray", lw=0.8, ls="--")
    axes[0, 0].set_xlabel("travel time T")
    axes[0, 0].set_ylabel("RESS of sin(x)")
    axes[0, 0].set_title(f"efficiency vs T (concentration {table.kappas[row]:g})")

    axes[0, 1].semilogx(table.kappas, t_star, "o-", ms=3)
    axes[0, 1].set_xlabel("concentration")
    axes[0, 1].set_ylabel("optimal travel time")
    axes[0, 1].set_title("T* per concentration")

    axes[1, 0].semilogx(table.kappas, best, "o-", ms=3)
    axes[1, 0].axhline(1.0, color="gray", lw=0.8, ls="--")
    axes[1, 0].set_xlabel("concentration")
    axes[1, 0].set_ylabel("RESS of sin(x) at T*")
    axes[1, 0].set_title("best efficiency per concentration")

    axes[1, 1].semilogx(base_k, base_rate, "o-", ms=3)
    axes[1, 1].set_xlabel("concentration")
    axes[1, 1].set_ylabel("acceptance rate")
    axes[1, 1].set_title("accept-reject baseline efficiency")
    fig.savefig(out_path, **_SAVE_KW)
    plt.close(fig)


def render_cpu_heatmap(table: SweepTable, out_path) -> None:
    """Wall seconds per cell (from a timing-mode sweep)."""
    if np.all(table.wall_seconds == 0.0):
        raise ValueError(
            "all wall_seconds are zero; produce the CSV with timing enabled"
        )
    fig, ax = plt.subplots(figsize=(7, 5), constrained_layout=True)
    m = _heat(ax, table, table.wall_seconds, "chain wall seconds per cell", cmap="magma")
    fig.colorbar(m, ax=ax)
    fig.savefig(out_path, **_SAVE_KW)
    plt.close(fig)
