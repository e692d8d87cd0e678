"""The experiment grid: RESS sweeps over (kappa, T), optimal travel time
search, baseline efficiency and the wall-time harness.

Cells are embarrassingly parallel; each derives its own Philox seed from the
master seed and its grid indices, so sweep output is identical regardless of
thread count or completion order. Records are canonicalized kappa-major.
"""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from vmhmc.diagnostics import DegenerateSeriesError, ress
from vmhmc.samplers import ChainConfig, run_best_fisher_chain, run_hmc_chain
from vmhmc.special import VonMisesParams

CSV_HEADER = "kappa,T,n,seed,ress_sin,tau_sin,ress_cos,tau_cos,wall_seconds"

_MASK64 = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def cell_seed(master_seed: int, kappa_index: int, t_index: int) -> int:
    """64-bit mix of (master seed, grid indices); stable across releases."""
    s = _splitmix64(master_seed & _MASK64)
    s = _splitmix64(s ^ ((kappa_index + 1) & _MASK64))
    s = _splitmix64(s ^ ((t_index + 1) & _MASK64))
    return s


@dataclass(frozen=True)
class SweepConfig:
    """Grid of concentrations and travel times to benchmark."""

    kappa_grid: tuple[float, ...]
    T_grid: tuple[float, ...]
    n: int = 100_000
    burn_in: int = 1000
    master_seed: int = 0
    threads: int = 1

    def __post_init__(self):
        for name, grid in (("kappa_grid", self.kappa_grid), ("T_grid", self.T_grid)):
            arr = np.asarray(grid, dtype=float)
            if arr.size == 0 or np.any(np.diff(arr) <= 0.0):
                raise ValueError(f"{name} must be nonempty and strictly increasing")
        if np.any(np.asarray(self.kappa_grid) <= 0.0):
            raise ValueError("kappa_grid values must be positive")
        if np.any(np.asarray(self.T_grid) < 0.0):
            raise ValueError("T_grid values must be nonnegative")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class SweepRecord:
    """One sweep cell; ress = 1/tau for both observables by construction."""

    kappa: float
    T: float
    n: int
    seed: int
    ress_sin: float
    tau_sin: float
    ress_cos: float
    tau_cos: float
    wall_seconds: float


def default_kappa_grid(points: int = 24, lo: float = 0.1, hi: float = 20.0) -> tuple[float, ...]:
    """Log-spaced concentration grid covering the benchmark range."""
    return tuple(float(v) for v in np.geomspace(lo, hi, points))


def default_t_grid(points: int = 64, lo: float = 0.0, hi: float = 2.5 * math.pi) -> tuple[float, ...]:
    """Linear travel-time grid covering [0, 2.5*pi]."""
    return tuple(float(v) for v in np.linspace(lo, hi, points))


def _series_tau(series: np.ndarray, n: int) -> tuple[float, float]:
    """(ress, tau) of an observable chain; a constant chain (e.g. T = 0,
    the particle never moves) counts as one effective draw: tau = n."""
    try:
        r = ress(series)
        return r.ress, r.tau
    except DegenerateSeriesError:
        return 1.0 / n, float(n)


def _run_cell(kappa: float, T: float, n: int, burn_in: int, seed: int) -> SweepRecord:
    out = run_hmc_chain(
        ChainConfig(params=VonMisesParams(kappa=kappa), T=T, n=n, burn_in=burn_in, seed=seed)
    )
    ress_sin, tau_sin = _series_tau(np.sin(out.samples), n)
    ress_cos, tau_cos = _series_tau(np.cos(out.samples), n)
    return SweepRecord(
        kappa=kappa,
        T=T,
        n=n,
        seed=seed,
        ress_sin=ress_sin,
        tau_sin=tau_sin,
        ress_cos=ress_cos,
        tau_cos=tau_cos,
        wall_seconds=out.wall_seconds,
    )


def _cell_task(cell) -> SweepRecord:
    kappa, T, n, burn_in, seed = cell
    return _run_cell(kappa, T, n, burn_in, seed)


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """One record per (kappa, T) cell, kappa-major order.

    ``threads`` is the worker-pool size; cells run in worker processes
    (each cell's Philox stream comes from its own derived seed, so output
    is identical for any pool size). Per-cell wall time is measured around
    the chain loop only; the CSV writer zeroes it unless timing output is
    requested, keeping default sweep files byte-reproducible.
    """
    cells = [
        (float(kappa), float(T), config.n, config.burn_in, cell_seed(config.master_seed, i, j))
        for i, kappa in enumerate(config.kappa_grid)
        for j, T in enumerate(config.T_grid)
    ]
    if config.threads == 1:
        return [_cell_task(c) for c in cells]
    with ProcessPoolExecutor(max_workers=config.threads) as pool:
        return list(pool.map(_cell_task, cells, chunksize=max(1, len(cells) // (8 * config.threads))))


def find_optimal_t(
    kappa: float,
    T_grid,
    n: int = 100_000,
    seed: int = 0,
    burn_in: int = 1000,
) -> tuple[float, float]:
    """Argmax of RESS(sin) over the travel-time grid, quadratically refined.

    A single parabola through the best grid point and its neighbors reduces
    grid-resolution bias; at a grid boundary the raw argmax is returned.
    """
    T_grid = [float(t) for t in T_grid]
    values = []
    for j, T in enumerate(T_grid):
        out = run_hmc_chain(
            ChainConfig(
                params=VonMisesParams(kappa=float(kappa)),
                T=T,
                n=n,
                burn_in=burn_in,
                seed=cell_seed(seed, 0, j),
            )
        )
        values.append(_series_tau(np.sin(out.samples), n)[0])
    i = int(np.argmax(values))
    if i == 0 or i == len(T_grid) - 1:
        return T_grid[i], values[i]
    t0, t1, t2 = T_grid[i - 1 : i + 2]
    v0, v1, v2 = values[i - 1 : i + 2]
    denom = (t1 - t0) * (v1 - v2) - (t1 - t2) * (v1 - v0)
    if denom == 0.0:
        return t1, v1
    t_star = t1 - 0.5 * ((t1 - t0) ** 2 * (v1 - v2) - (t1 - t2) ** 2 * (v1 - v0)) / denom
    t_star = min(max(t_star, t0), t2)
    # parabola value at the vertex
    w0 = (t_star - t1) * (t_star - t2) / ((t0 - t1) * (t0 - t2))
    w1 = (t_star - t0) * (t_star - t2) / ((t1 - t0) * (t1 - t2))
    w2 = (t_star - t0) * (t_star - t1) / ((t2 - t0) * (t2 - t1))
    return float(t_star), float(w0 * v0 + w1 * v1 + w2 * v2)


def baseline_efficiency(kappa_grid, n: int = 100_000, seed: int = 0) -> list[tuple[float, float]]:
    """Best-Fisher acceptance rate per concentration."""
    rows = []
    for i, kappa in enumerate(kappa_grid):
        out = run_best_fisher_chain(
            ChainConfig(
                params=VonMisesParams(kappa=float(kappa)),
                T=0.0,
                n=n,
                burn_in=0,
                seed=cell_seed(seed, i, 0),
            )
        )
        rows.append((float(kappa), out.acceptance_rate))
    return rows


def time_sweep(config: SweepConfig, repeats: int = 3) -> list[tuple[float, float, float]]:
    """Per-cell wall seconds of the chain loop, single-threaded.

    Each cell reruns ``repeats`` times (identical seeds, so identical work)
    and the minimum wall is kept, suppressing scheduler interference.
    Absolute values are hardware-dependent; only positivity, the trend in T
    and run-to-run rank stability are meaningful.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if config.threads != 1:
        config = SweepConfig(
            kappa_grid=config.kappa_grid,
            T_grid=config.T_grid,
            n=config.n,
            burn_in=config.burn_in,
            master_seed=config.master_seed,
            threads=1,
        )
    walls = None
    meta = None
    for _ in range(repeats):
        records = run_sweep(config)
        if walls is None:
            walls = [r.wall_seconds for r in records]
            meta = [(r.kappa, r.T) for r in records]
        else:
            walls = [min(a, r.wall_seconds) for a, r in zip(walls, records)]
    return [(k, T, w) for (k, T), w in zip(meta, walls)]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_sweep_csv(records, fp, timing: bool = False) -> None:
    """Write sweep records in the canonical schema.

    ``timing=False`` zeroes the wall_seconds column so files from identical
    configs are byte-identical.
    """
    fp.write(CSV_HEADER + "\n")
    for r in records:
        wall = r.wall_seconds if timing else 0.0
        fp.write(
            ",".join(
                [
                    _fmt(r.kappa),
                    _fmt(r.T),
                    str(r.n),
                    str(r.seed),
                    _fmt(r.ress_sin),
                    _fmt(r.tau_sin),
                    _fmt(r.ress_cos),
                    _fmt(r.tau_cos),
                    _fmt(wall),
                ]
            )
            + "\n"
        )


def sweep_csv_text(records, timing: bool = False) -> str:
    buf = io.StringIO()
    write_sweep_csv(records, buf, timing=timing)
    return buf.getvalue()


def sweep_json_text(records, timing: bool = False) -> str:
    """JSON array mirror of the CSV records."""
    rows = []
    for r in records:
        d = asdict(r)
        if not timing:
            d["wall_seconds"] = 0.0
        rows.append(d)
    return json.dumps(rows, indent=2)
