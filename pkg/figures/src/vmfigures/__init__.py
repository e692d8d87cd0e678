"""Regenerate the benchmark figures from the vmhmc CLI's CSV and sample files."""

from vmfigures.io import SchemaError, SweepTable, read_baseline_csv, read_samples, read_sweep_csv
from vmfigures.render import (
    render_cpu_heatmap,
    render_optimal_curves,
    render_ress_heatmaps,
    render_trace_acf_hist,
    super_efficient_masks,
)

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "SweepTable",
    "read_baseline_csv",
    "read_samples",
    "read_sweep_csv",
    "render_cpu_heatmap",
    "render_optimal_curves",
    "render_ress_heatmaps",
    "render_trace_acf_hist",
    "super_efficient_masks",
]
