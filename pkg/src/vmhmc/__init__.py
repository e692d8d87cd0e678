"""Exactly solvable Hamiltonian Monte Carlo for the von Mises distribution.

Laplace momentum makes the trajectories piecewise linear with closed-form
momentum zero crossings, so the chain needs no numerical integrator and no
accept-reject step. With a well-chosen travel time the chain is antithetic
in odd observables and its relative effective sample size exceeds one.
"""

from vmhmc._backend import BACKEND
from vmhmc.bench import (
    SweepConfig,
    SweepRecord,
    baseline_efficiency,
    cell_seed,
    default_kappa_grid,
    default_t_grid,
    find_optimal_t,
    run_sweep,
    time_sweep,
    write_sweep_csv,
)
from vmhmc.diagnostics import (
    DegenerateSeriesError,
    EssResult,
    autocorrelation,
    chisq_gof,
    circular_moments,
    geyer_tau,
    ress,
)
from vmhmc.dynamics import (
    PhasePoint,
    SegmentCapError,
    TrajectoryResult,
    crossing_exists,
    evolve,
    evolve_fast,
    evolve_segment,
    first_crossing_time,
    hamiltonian,
    oracle_integrate,
)
from vmhmc.samplers import (
    ChainConfig,
    ChainOutput,
    best_fisher_sample,
    hmc_step,
    laplace_from_uniform,
    make_stream,
    run_best_fisher_chain,
    run_hmc_chain,
    sample_laplace_momentum,
)
from vmhmc.special import (
    VonMisesParams,
    bessel_i0,
    bessel_i1,
    bin_probability,
    log_bessel_i0,
    mean_resultant_length,
    vm_log_density,
    wrap_angle,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ChainConfig",
    "ChainOutput",
    "DegenerateSeriesError",
    "EssResult",
    "PhasePoint",
    "SegmentCapError",
    "SweepConfig",
    "SweepRecord",
    "TrajectoryResult",
    "VonMisesParams",
    "autocorrelation",
    "baseline_efficiency",
    "bessel_i0",
    "bessel_i1",
    "best_fisher_sample",
    "bin_probability",
    "cell_seed",
    "chisq_gof",
    "circular_moments",
    "crossing_exists",
    "default_kappa_grid",
    "default_t_grid",
    "evolve",
    "evolve_fast",
    "evolve_segment",
    "find_optimal_t",
    "first_crossing_time",
    "geyer_tau",
    "hamiltonian",
    "hmc_step",
    "laplace_from_uniform",
    "log_bessel_i0",
    "make_stream",
    "mean_resultant_length",
    "oracle_integrate",
    "ress",
    "run_best_fisher_chain",
    "run_hmc_chain",
    "run_sweep",
    "sample_laplace_momentum",
    "time_sweep",
    "vm_log_density",
    "wrap_angle",
    "write_sweep_csv",
]
