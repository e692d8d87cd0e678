"""Exact piecewise trajectory evolution for the Laplace-momentum Hamiltonian.

The Hamiltonian is H(x, p) = -kappa*cos(x) + |p| (location shifted to zero by
callers). Positions move at unit speed in the direction sign(p); the momentum
follows p(t) = p0 - kappa*s*cos(x0) + kappa*s*cos(x0 + s*t) until it hits
zero, where the direction flips and the trajectory continues. Everything here
is pure and thread-safe.

Two evolvers are provided: :func:`evolve` stitches segments one by one (the
readable reference, with a hard segment cap), while :func:`evolve_fast`
resolves the post-first-crossing oscillation in O(1) through the kernel
backend and is the production path. :func:`oracle_integrate` is a brute-force
integrator of the equations of motion used to cross-check both.

Positions are kept unwrapped during evolution; chains wrap at output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vmhmc._backend import kernels
from vmhmc.special import wrap_angle

SIN_EPS = 1e-12
SEGMENT_CAP = 1_000_000


class SegmentCapError(RuntimeError):
    """Raised if the segment loop fails to consume the travel time.

    This is defense in depth; it must never fire (evolve_fast is the
    production path and evolve's crossing times are bounded away from zero
    outside the frozen equilibria, which are handled explicitly).
    """


@dataclass(frozen=True)
class PhasePoint:
    """Augmented state (position, momentum)."""

    x: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.p)):
            raise ValueError(f"phase point must be finite, got ({self.x!r}, {self.p!r})")


@dataclass(frozen=True)
class TrajectoryResult:
    """One Hamiltonian trajectory.

    ``crossing_times`` holds the cumulative times of the momentum zero
    crossings within [0, T]; the last entry plus the final partial segment
    equals T. ``h_start``/``h_end`` are the Hamiltonian values at the ends.
    """

    end: PhasePoint
    q: int
    crossing_times: np.ndarray
    h_start: float
    h_end: float


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise ValueError(f"kappa must be positive and finite, got {kappa!r}")
    return kappa


def hamiltonian(state: PhasePoint, kappa: float) -> float:
    """Energy -kappa*cos(x) + |p| (additive constant dropped)."""
    kappa = _check_kappa(kappa)
    return -kappa * math.cos(state.x) + abs(state.p)


def crossing_exists(x0: float, p0: float, kappa: float) -> bool:
    """Whether the momentum reaches zero: cos(x0) - |p0|/kappa >= -1."""
    kappa = _check_kappa(kappa)
    return math.cos(x0) - abs(p0) / kappa >= -1.0


def first_crossing_time(x0: float, p0: float, s: float, kappa: float) -> float:
    """Smallest t > 0 with cos(x0 + s*t) = cos(x0) - |p0|/kappa.

    ``s`` must be sign(p0) for a moving state; for a fresh turning point
    (p0 = 0) it must be the post-flip, downhill direction, and the t = 0 root
    at x0 itself is excluded algebraically (the opposite turning point is the
    next root, two amplitudes away).
    """
    kappa = _check_kappa(kappa)
    if s not in (-1.0, 1.0, -1, 1):
        raise ValueError(f"s must be +-1, got {s!r}")
    s = float(s)
    c = math.cos(x0) - abs(p0) / kappa
    if c < -1.0:
        raise ValueError("no crossing: cos(x0) - |p0|/kappa < -1")
    a = math.acos(c)
    if p0 != 0.0:
        if (p0 > 0.0) != (s > 0.0):
            raise ValueError("s must equal sign(p0) for a moving state")
        # roots sit at +-a (mod 2pi) with |wrap(x0)| < a; the one ahead in
        # direction s is a for s=+1 and -a for s=-1
        t = a - s * wrap_angle(x0)
        return t if t > 0.0 else 0.0
    sx = math.sin(x0)
    if abs(sx) > SIN_EPS and (s > 0.0) != (-sx > 0.0):
        raise ValueError("s must be the downhill (post-flip) direction at a turning point")
    return 2.0 * a


def evolve_segment(state: PhasePoint, s: float, dt: float, kappa: float) -> PhasePoint:
    """Advance one crossing-free segment: x' = x + s*dt, p by the exact law."""
    kappa = _check_kappa(kappa)
    s = float(s)
    x1 = state.x + s * dt
    p1 = state.p - kappa * s * math.cos(state.x) + kappa * s * math.cos(x1)
    return PhasePoint(x1, p1)


def _entry_direction(x: float, p: float) -> float | None:
    """Travel direction at entry; None when frozen at an equilibrium."""
    if p > 0.0:
        return 1.0
    if p < 0.0:
        return -1.0
    sx = math.sin(x)
    if abs(sx) <= SIN_EPS:
        return None
    return 1.0 if -sx > 0.0 else -1.0


def evolve(state: PhasePoint, kappa: float, T: float) -> TrajectoryResult:
    """Reference evolver: stitch exact segments at each momentum zero.

    Equivalent to :func:`evolve_fast`; kept as the independently-looped
    implementation for cross-checking and readability.
    """
    kappa = _check_kappa(kappa)
    T = float(T)
    if not math.isfinite(T) or T < 0.0:
        raise ValueError(f"T must be finite and nonnegative, got {T!r}")
    h_start = hamiltonian(state, kappa)
    x, p = state.x, state.p
    if T == 0.0:
        return TrajectoryResult(state, 0, np.empty(0), h_start, h_start)
    s = _entry_direction(x, p)
    crossings: list[float] = []
    if s is not None:
        t_rem = T
        elapsed = 0.0
        for _ in range(SEGMENT_CAP):
            if not crossing_exists(x, p, kappa):
                end = evolve_segment(PhasePoint(x, p), s, t_rem, kappa)
                x, p = end.x, end.p
                t_rem = 0.0
                break
            t_z = first_crossing_time(x, p, s, kappa)
            if t_z > t_rem:
                end = evolve_segment(PhasePoint(x, p), s, t_rem, kappa)
                x, p = end.x, end.p
                t_rem = 0.0
                break
            x = x + s * t_z
            p = 0.0
            elapsed += t_z
            t_rem -= t_z
            crossings.append(elapsed)
            s = -s
            sx = math.sin(x)
            if abs(sx) > SIN_EPS and (s > 0.0) != (-sx > 0.0):
                raise SegmentCapError("post-flip direction disagrees with the force")
            if abs(sx) <= SIN_EPS:
                break  # unstable equilibrium: frozen for the remaining time
            if t_rem <= 0.0:
                break
        else:
            raise SegmentCapError(f"segment cap {SEGMENT_CAP} exceeded (T={T}, kappa={kappa})")
    end_state = PhasePoint(x, p)
    return TrajectoryResult(
        end_state,
        len(crossings),
        np.asarray(crossings),
        h_start,
        hamiltonian(end_state, kappa),
    )


def evolve_fast(state: PhasePoint, kappa: float, T: float) -> TrajectoryResult:
    """Production evolver: O(1) via the kernel backend.

    After the first crossing the trajectory oscillates between two turning
    points with a constant half period, so the remaining time is reduced
    modulo that period instead of looped over.
    """
    kappa = _check_kappa(kappa)
    T = float(T)
    if not math.isfinite(T) or T < 0.0:
        raise ValueError(f"T must be finite and nonnegative, got {T!r}")
    x1, p1, q, t_first, half_period = kernels.evolve_endpoint(state.x, state.p, kappa, T)
    if q > 0:
        crossing_times = t_first + half_period * np.arange(q)
    else:
        crossing_times = np.empty(0)
    end_state = PhasePoint(x1, p1)
    return TrajectoryResult(
        end_state,
        int(q),
        crossing_times,
        hamiltonian(state, kappa),
        hamiltonian(end_state, kappa),
    )


def oracle_integrate(state: PhasePoint, kappa: float, T: float, step: float = 1e-5) -> PhasePoint:
    """Brute-force small-step integration of the equations of motion.

    Step <= 1e-5 gives ~1e-6 endpoint accuracy over the benchmark ranges.
    Test oracle only; it is orders of magnitude slower than the exact paths.
    """
    kappa = _check_kappa(kappa)
    T = float(T)
    if not math.isfinite(T) or T < 0.0:
        raise ValueError(f"T must be finite and nonnegative, got {T!r}")
    step = float(step)
    if not math.isfinite(step) or step <= 0.0:
        raise ValueError(f"step must be positive, got {step!r}")
    x1, p1 = kernels.oracle_endpoint(state.x, state.p, kappa, T, step)
    return PhasePoint(x1, p1)
