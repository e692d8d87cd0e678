"""Figure regeneration CLI.

Reads the benchmark CSV schema and sample-lines files produced by the
``vmhmc`` CLI and writes image files. Exit codes: 0 success, 2 bad inputs.
"""

from __future__ import annotations

import argparse
import sys

from vmfigures import io, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vmhmc-figures", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ress-heatmaps", help="RESS heatmaps + super-efficiency masks")
    p.add_argument("--sweep", required=True, help="sweep CSV path")
    p.add_argument("--out", required=True, help="output image path")

    p = sub.add_parser("trace-acf-hist", help="trace, sin ACF and histogram panels")
    p.add_argument("--samples", required=True, help="sample-lines file")
    p.add_argument("--kappa", type=float, required=True, help="concentration of the run")
    p.add_argument("--nu", type=float, default=0.0, help="location of the run")
    p.add_argument("--out", required=True)

    p = sub.add_parser("optimal-curves", help="efficiency curves and the baseline panel")
    p.add_argument("--sweep", required=True)
    p.add_argument("--baseline", required=True, help="baseline CSV path")
    p.add_argument("--kappa", type=float, default=4.0, help="row for the efficiency-vs-T panel")
    p.add_argument("--out", required=True)

    p = sub.add_parser("cpu-heatmap", help="wall seconds per sweep cell")
    p.add_argument("--sweep", required=True, help="sweep CSV produced with timing enabled")
    p.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "ress-heatmaps":
            render.render_ress_heatmaps(io.read_sweep_csv(args.sweep), args.out)
        elif args.command == "trace-acf-hist":
            samples = io.read_samples(args.samples)
            if args.kappa <= 0.0:
                print("error: --kappa must be positive", file=sys.stderr)
                return 2
            render.render_trace_acf_hist(samples, args.kappa, args.nu, args.out)
        elif args.command == "optimal-curves":
            render.render_optimal_curves(
                io.read_sweep_csv(args.sweep),
                io.read_baseline_csv(args.baseline),
                args.out,
                kappa_focus=args.kappa,
            )
        elif args.command == "cpu-heatmap":
            render.render_cpu_heatmap(io.read_sweep_csv(args.sweep), args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
