#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Times the three hot kernels on identical inputs and prints throughput plus
speedup. Typical numbers on a desktop-class core: the chain loop runs at a
few million steps/s compiled vs a few hundred thousand interpreted.

Usage: python benchmarks/bench_backends.py [--steps N] [--repeat R]
"""

import argparse
import math
import time

import numpy as np

from vmhmc import _kernels_py

try:
    from vmhmc import _kernels
except ImportError:
    _kernels = None


def best_of(repeat, fn, *args):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000, help="chain steps per run")
    parser.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    args = parser.parse_args()

    if _kernels is None:
        print("compiled core not built; build it first (pip install -e .)")
        return 1

    rng = np.random.default_rng(0)
    uniforms = rng.random(args.steps)
    out = np.empty(args.steps)
    kappa, T = 4.0, 2.32

    rows = []

    def chain_compiled():
        _kernels.run_chain(0.0, kappa, T, uniforms, out)

    def chain_python():
        _kernels_py.run_chain(0.0, kappa, T, uniforms, out)

    tc = best_of(args.repeat, chain_compiled)
    tp = best_of(args.repeat, chain_python)
    rows.append(("hmc chain loop", f"{args.steps/tc/1e6:8.2f} Msteps/s",
                 f"{args.steps/tp/1e6:8.2f} Msteps/s", tp / tc))

    tuples = [
        (float(rng.uniform(-math.pi, math.pi)),
         _kernels_py.laplace_from_uniform(rng.random()),
         float(np.exp(rng.uniform(math.log(0.1), math.log(20.0)))),
         float(rng.uniform(0.0, 2.5 * math.pi)))
        for _ in range(20_000)
    ]

    def endpoints(mod):
        for x, p, k, t in tuples:
            mod.evolve_endpoint(x, p, k, t)

    tc = best_of(args.repeat, endpoints, _kernels)
    tp = best_of(args.repeat, endpoints, _kernels_py)
    rows.append(("evolve endpoint", f"{len(tuples)/tc/1e6:8.2f} Mcalls/s",
                 f"{len(tuples)/tp/1e6:8.2f} Mcalls/s", tp / tc))

    def oracle(mod):
        mod.oracle_endpoint(0.1, 1.0, kappa, 2.5 * math.pi, 1e-6)

    tc = best_of(args.repeat, oracle, _kernels)
    tp = best_of(args.repeat, oracle, _kernels_py)
    nsteps = 2.5 * math.pi / 1e-6
    rows.append(("oracle integrator", f"{nsteps/tc/1e6:8.2f} Msteps/s",
                 f"{nsteps/tp/1e6:8.2f} Msteps/s", tp / tc))

    print(f"{'kernel':<20} {'compiled':>18} {'pure python':>18} {'speedup':>9}")
    for name, c, p, s in rows:
        print(f"{name:<20} {c:>18} {p:>18} {s:>8.1f}x")

    # both backends must agree bit for bit on the chain
    check = np.empty(1000)
    _kernels.run_chain(0.0, kappa, T, uniforms[:1000], check)
    check_py = np.empty(1000)
    _kernels_py.run_chain(0.0, kappa, T, uniforms[:1000], check_py)
    print("bit-identical chains:", bool(np.array_equal(check, check_py)))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
