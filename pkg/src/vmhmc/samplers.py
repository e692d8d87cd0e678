"""The HMC Markov chain over the exact dynamics, and the Best-Fisher
accept-reject baseline.

Randomness contract: every chain owns one counter-based Philox stream keyed
by its 64-bit seed, so runs are reproducible across platforms and thread
schedules. Momentum draws go through the inverse CDF
:func:`laplace_from_uniform`, which doubles as the deterministic test seam.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from vmhmc._backend import kernels
from vmhmc.special import VonMisesParams, wrap_angle, wrap_angle_array

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ChainConfig:
    """Configuration of one sampling run.

    ``x_init`` defaults to the mode ``params.nu``. ``T`` is the travel time
    of each Hamiltonian trajectory (ignored by the Best-Fisher baseline, as
    is ``burn_in``).
    """

    params: VonMisesParams
    T: float
    n: int
    burn_in: int = 1000
    seed: int = 0
    x_init: float | None = None

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.burn_in, (int, np.integer)) and self.burn_in >= 0):
            raise ValueError(f"burn_in must be a nonnegative integer, got {self.burn_in!r}")
        if not (math.isfinite(self.T) and self.T >= 0.0):
            raise ValueError(f"T must be finite and nonnegative, got {self.T!r}")
        if self.x_init is not None and not math.isfinite(self.x_init):
            raise ValueError(f"x_init must be finite, got {self.x_init!r}")


@dataclass(frozen=True)
class ChainOutput:
    """Samples plus run statistics.

    ``acceptance_rate`` is identically 1 for HMC (the flow conserves energy
    exactly, so there is nothing to reject); for the baseline it is the
    fraction of envelope proposals that were accepted.
    """

    samples: np.ndarray
    acceptance_rate: float
    wall_seconds: float


def make_stream(seed: int) -> np.random.Generator:
    """Counter-based Philox stream keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=np.uint64(seed & _MASK64)))


def laplace_from_uniform(u: float) -> float:
    """Inverse CDF of the unit Laplace momentum density 0.5*exp(-|p|)."""
    return kernels.laplace_from_uniform(float(u))


def sample_laplace_momentum(rng: np.random.Generator) -> float:
    """One momentum refresh draw."""
    return kernels.laplace_from_uniform(rng.random())


def hmc_step(
    x: float,
    rng: np.random.Generator | None,
    params: VonMisesParams,
    T: float,
    momentum: float | None = None,
) -> float:
    """One transition: refresh the momentum, run the exact trajectory.

    The dynamics run in the nu = 0 frame; the output is wrapped back around
    nu. ``momentum`` overrides the random draw for deterministic tests.
    """
    p = sample_laplace_momentum(rng) if momentum is None else float(momentum)
    x_rel = wrap_angle(x - params.nu)
    x1, _, _, _, _ = kernels.evolve_endpoint(x_rel, p, params.kappa, float(T))
    return wrap_angle(kernels.wrap(x1) + params.nu)


def run_hmc_chain(config: ChainConfig) -> ChainOutput:
    """Run the chain; burn_in steps discarded, n retained.

    Deterministic given the seed. The chain state lives in the nu = 0 frame
    and is wrapped after every trajectory, so retained samples equal
    wrap(relative_sample + nu) elementwise.
    """
    params = config.params
    x_init = params.nu if config.x_init is None else config.x_init
    x0 = wrap_angle(x_init - params.nu)
    total = config.burn_in + config.n
    rng = make_stream(config.seed)
    t0 = time.perf_counter()
    uniforms = rng.random(total)
    rel = np.empty(total)
    kernels.run_chain(x0, params.kappa, float(config.T), uniforms, rel)
    wall = time.perf_counter() - t0
    samples = wrap_angle_array(rel[config.burn_in :] + params.nu)
    return ChainOutput(samples=samples, acceptance_rate=1.0, wall_seconds=wall)


def best_fisher_sample(rng: np.random.Generator, params: VonMisesParams) -> tuple[float, int]:
    """One exact von Mises draw by the Best-Fisher (1979) rejection scheme.

    Wrapped-Cauchy envelope with the canonical constants; returns the draw
    and the number of envelope proposals consumed.
    """
    kappa = params.kappa
    tau = 1.0 + math.sqrt(1.0 + 4.0 * kappa * kappa)
    rho = (tau - math.sqrt(2.0 * tau)) / (2.0 * kappa)
    r = (1.0 + rho * rho) / (2.0 * rho)
    proposals = 0
    while True:
        proposals += 1
        z = math.cos(math.pi * rng.random())
        f = (1.0 + r * z) / (r + z)
        c = kappa * (r - f)
        u2 = rng.random()
        if c * (2.0 - c) - u2 > 0.0:
            break
        if u2 > 0.0 and math.log(c / u2) + 1.0 - c >= 0.0:
            break
    x = math.acos(f)
    if rng.random() < 0.5:
        x = -x
    return wrap_angle(x + params.nu), proposals


def run_best_fisher_chain(config: ChainConfig) -> ChainOutput:
    """n i.i.d. Best-Fisher draws (T and burn_in are ignored)."""
    rng = make_stream(config.seed)
    n = config.n
    samples = np.empty(n)
    total_proposals = 0
    t0 = time.perf_counter()
    for i in range(n):
        samples[i], used = best_fisher_sample(rng, config.params)
        total_proposals += used
    wall = time.perf_counter() - t0
    return ChainOutput(
        samples=samples,
        acceptance_rate=n / total_proposals,
        wall_seconds=wall,
    )
