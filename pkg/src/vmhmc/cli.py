"""Command-line surface: sample, sweep, optimal-t, baseline, validate.

Exit codes: 0 success, 1 I/O failure, 2 usage/flag validation, 3 validation
suite failure. Every subcommand is deterministic given its full flag set;
``VMHMC_SEED`` overrides the default master seed (flags take precedence).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from vmhmc import bench
from vmhmc.samplers import ChainConfig, run_best_fisher_chain, run_hmc_chain
from vmhmc.special import VonMisesParams, wrap_angle
from vmhmc.validation import GOF_BINS, run_validation

T_MAX_DEFAULT = 2.5 * math.pi


def _env_seed() -> int:
    raw = os.environ.get("VMHMC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be a positive real, got {text}")
    return value


def _grid_args(sub, kappa_points: int = 24, t_points: int = 64) -> None:
    sub.add_argument("--kappa-min", type=_positive_float, default=0.1)
    sub.add_argument("--kappa-max", type=_positive_float, default=20.0)
    sub.add_argument("--kappa-points", type=_positive_int, default=kappa_points)
    sub.add_argument("--t-min", type=float, default=0.0)
    sub.add_argument("--t-max", type=float, default=T_MAX_DEFAULT)
    sub.add_argument("--t-points", type=_positive_int, default=t_points)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vmhmc",
        description="Exactly solvable HMC sampling for the von Mises distribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw samples and write one radian per line")
    p.add_argument("--kappa", type=_positive_float, required=True)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--T", type=float, default=None, help="travel time (required for hmc)")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--burn-in", type=_nonnegative_int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--method", choices=("hmc", "best-fisher"), default="hmc")
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("sweep", help="RESS over a (kappa, T) grid, CSV output")
    _grid_args(p)
    p.add_argument("--n", type=_positive_int, default=100_000)
    p.add_argument("--burn-in", type=_nonnegative_int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="record wall seconds per cell (forces --threads 1; "
                   "output is then no longer byte-reproducible)")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--json", default=None, help="optional JSON mirror path")

    p = sub.add_parser("optimal-t", help="grid-search the travel time per kappa")
    p.add_argument("--kappa", type=_positive_float, action="append", default=None,
                   help="repeatable; default 4.0")
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=T_MAX_DEFAULT)
    p.add_argument("--t-points", type=_positive_int, default=64)
    p.add_argument("--n", type=_positive_int, default=100_000)
    p.add_argument("--burn-in", type=_nonnegative_int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="optional CSV output path")

    p = sub.add_parser("baseline", help="Best-Fisher acceptance rate per kappa")
    p.add_argument("--kappa-min", type=_positive_float, default=0.1)
    p.add_argument("--kappa-max", type=_positive_float, default=20.0)
    p.add_argument("--kappa-points", type=_positive_int, default=24)
    p.add_argument("--n", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="optional CSV output path")

    p = sub.add_parser("validate", help="run the self-check suite")
    p.add_argument("--kappa", type=_positive_float, action="append", default=None,
                   help="repeatable; default 0.5 4 20")
    p.add_argument("--n", type=_positive_int, default=100_000)
    p.add_argument("--T", type=float, default=2.32)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tuples", type=_positive_int, default=1000,
                   help="random tuples for the trajectory checks")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    return parser


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="ascii"), True


def _cmd_sample(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    params = VonMisesParams(kappa=args.kappa, nu=wrap_angle(args.nu))
    if args.method == "hmc":
        if args.T is None:
            print("error: --T is required for --method hmc", file=sys.stderr)
            return 2
        if not (math.isfinite(args.T) and args.T >= 0.0):
            print("error: --T must be finite and nonnegative", file=sys.stderr)
            return 2
        config = ChainConfig(params=params, T=args.T, n=args.n, burn_in=args.burn_in, seed=seed)
        out = run_hmc_chain(config)
    else:
        config = ChainConfig(params=params, T=0.0, n=args.n, burn_in=0, seed=seed)
        out = run_best_fisher_chain(config)
    fp, close = _open_out(args.out)
    try:
        fp.write("".join(f"{x:.17g}\n" for x in out.samples))
    finally:
        if close:
            fp.close()
    return 0


def _cmd_sweep(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    threads = 1 if args.timing else args.threads
    if not (0.0 <= args.t_min < args.t_max):
        print("error: need 0 <= --t-min < --t-max", file=sys.stderr)
        return 2
    if args.kappa_min >= args.kappa_max:
        print("error: need --kappa-min < --kappa-max", file=sys.stderr)
        return 2
    config = bench.SweepConfig(
        kappa_grid=bench.default_kappa_grid(args.kappa_points, args.kappa_min, args.kappa_max),
        T_grid=bench.default_t_grid(args.t_points, args.t_min, args.t_max),
        n=args.n,
        burn_in=args.burn_in,
        master_seed=seed,
        threads=threads,
    )
    records = bench.run_sweep(config)
    with open(args.out, "w", encoding="ascii") as fp:
        bench.write_sweep_csv(records, fp, timing=args.timing)
    if args.json is not None:
        with open(args.json, "w", encoding="ascii") as fp:
            fp.write(bench.sweep_json_text(records, timing=args.timing))
    return 0


def _cmd_optimal_t(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    kappas = args.kappa if args.kappa else [4.0]
    t_grid = bench.default_t_grid(args.t_points, args.t_min, args.t_max)
    lines = ["kappa,T_star,ress_at_star"]
    for kappa in kappas:
        t_star, ress_star = bench.find_optimal_t(
            kappa, t_grid, n=args.n, seed=seed, burn_in=args.burn_in
        )
        lines.append(f"{kappa:.17g},{t_star:.17g},{ress_star:.17g}")
        print(f"kappa={kappa:g}: T*={t_star:.4f}  RESS(sin)={ress_star:.3f}")
    if args.out is not None:
        with open(args.out, "w", encoding="ascii") as fp:
            fp.write("\n".join(lines) + "\n")
    return 0


def _cmd_baseline(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    grid = bench.default_kappa_grid(args.kappa_points, args.kappa_min, args.kappa_max)
    rows = bench.baseline_efficiency(grid, n=args.n, seed=seed)
    lines = ["kappa,acceptance_rate,n,seed"]
    for kappa, rate in rows:
        lines.append(f"{kappa:.17g},{rate:.17g},{args.n},{seed}")
        print(f"kappa={kappa:8.4f}  acceptance={rate:.4f}")
    if args.out is not None:
        with open(args.out, "w", encoding="ascii") as fp:
            fp.write("\n".join(lines) + "\n")
    return 0


def _cmd_validate(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    kappas = args.kappa if args.kappa else [0.5, 4.0, 20.0]
    if args.n < 5 * GOF_BINS:
        print(
            f"error: --n {args.n} too small for the {GOF_BINS}-bin goodness-of-fit "
            f"test (need >= {5 * GOF_BINS})",
            file=sys.stderr,
        )
        return 2
    if not (math.isfinite(args.T) and args.T >= 0.0):
        print("error: --T must be finite and nonnegative", file=sys.stderr)
        return 2
    results = run_validation(
        kappas=kappas, n=args.n, seed=seed, T=args.T,
        inject_fault=args.inject_fault, oracle_tuples=args.tuples,
    )
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    return 0 if all(r.passed for r in results) else 3


_HANDLERS = {
    "sample": _cmd_sample,
    "sweep": _cmd_sweep,
    "optimal-t": _cmd_optimal_t,
    "baseline": _cmd_baseline,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
