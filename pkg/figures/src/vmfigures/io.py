"""Readers for the benchmark CSV schema and sample-lines files."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

SWEEP_COLUMNS = (
    "kappa",
    "T",
    "n",
    "seed",
    "ress_sin",
    "tau_sin",
    "ress_cos",
    "tau_cos",
    "wall_seconds",
)

BASELINE_COLUMNS = ("kappa", "acceptance_rate", "n", "seed")


class SchemaError(ValueError):
    """Input file does not conform to the expected column schema."""


@dataclass(frozen=True)
class SweepTable:
    """A sweep CSV pivoted onto its (kappa, T) grid."""

    kappas: np.ndarray  # shape (nk,), ascending
    times: np.ndarray  # shape (nt,), ascending
    ress_sin: np.ndarray  # shape (nk, nt)
    ress_cos: np.ndarray
    wall_seconds: np.ndarray


def _check_header(header, expected, path):
    if tuple(header) != tuple(expected):
        missing = [c for c in expected if c not in header]
        extra = [c for c in header if c not in expected]
        raise SchemaError(
            f"{path}: bad column schema; expected {','.join(expected)}; "
            f"missing columns: {missing or 'none'}; unexpected columns: {extra or 'none'}"
        )


def read_sweep_csv(path) -> SweepTable:
    """Parse and pivot a sweep CSV; raises SchemaError with column
    diagnostics on mismatch and on ragged or empty grids."""
    with open(path, newline="") as fp:
        reader = csv.reader(fp)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file (no header)") from None
        _check_header(header, SWEEP_COLUMNS, path)
        rows = [tuple(map(float, row)) for row in reader if row]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    kappas = np.array(sorted({r[0] for r in rows}))
    times = np.array(sorted({r[1] for r in rows}))
    if len(rows) != kappas.size * times.size:
        raise SchemaError(
            f"{path}: expected a full {kappas.size}x{times.size} grid, got {len(rows)} rows"
        )
    ki = {k: i for i, k in enumerate(kappas)}
    ti = {t: j for j, t in enumerate(times)}
    shape = (kappas.size, times.size)
    ress_sin = np.full(shape, np.nan)
    ress_cos = np.full(shape, np.nan)
    walls = np.full(shape, np.nan)
    for r in rows:
        i, j = ki[r[0]], ti[r[1]]
        ress_sin[i, j] = r[4]
        ress_cos[i, j] = r[6]
        walls[i, j] = r[8]
    return SweepTable(kappas, times, ress_sin, ress_cos, walls)


def read_baseline_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a baseline-efficiency CSV into (kappas, acceptance_rates)."""
    with open(path, newline="") as fp:
        reader = csv.reader(fp)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file (no header)") from None
        _check_header(header, BASELINE_COLUMNS, path)
        rows = [tuple(map(float, row)) for row in reader if row]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    rows.sort()
    return np.array([r[0] for r in rows]), np.array([r[1] for r in rows])


def read_samples(path) -> np.ndarray:
    """Read a sample-lines file (one decimal radian per line)."""
    with open(path) as fp:
        text = fp.read().split()
    try:
        values = np.array([float(v) for v in text])
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric sample line ({exc})") from None
    if values.size == 0:
        raise SchemaError(f"{path}: no samples")
    if values.ndim != 1:
        raise SchemaError(f"{path}: expected one value per line")
    return values
