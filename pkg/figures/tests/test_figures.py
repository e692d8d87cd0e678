"""Figure pipeline tests.

Synthetic fixtures cover the readers and renderers; the integration tests
drive the real ``vmhmc`` CLI (the producing side of the CSV/sample-file
interface) on a reduced grid. Set ``VMFIGURES_FULL_SWEEP=1`` to run the
acceptance-scale default grid instead (minutes, not seconds).
"""

import math
import os
import shutil
import subprocess

import numpy as np
import pytest

from vmfigures.cli import main
from vmfigures.io import SchemaError, read_baseline_csv, read_samples, read_sweep_csv
from vmfigures.render import acf, optimal_curves_data, super_efficient_masks

VMHMC = shutil.which("vmhmc")
FULL = os.environ.get("VMFIGURES_FULL_SWEEP") == "1"


def synthetic_sweep_csv(path, nk=3, nt=5, timing=False):
    lines = ["kappa,T,n,seed,ress_sin,tau_sin,ress_cos,tau_cos,wall_seconds"]
    for i in range(nk):
        for j in range(nt):
            kappa = 0.5 * 2.0**i
            T = 0.5 + j
            ress_sin = 0.5 + i + 0.1 * j
            ress_cos = 0.8
            wall = 0.01 * (1 + i + j) if timing else 0.0
            lines.append(
                f"{kappa},{T},1000,42,{ress_sin},{1.0/ress_sin},"
                f"{ress_cos},{1.0/ress_cos},{wall}"
            )
    path.write_text("\n".join(lines) + "\n")


def synthetic_baseline_csv(path):
    lines = ["kappa,acceptance_rate,n,seed"]
    for kappa, rate in ((0.5, 0.95), (1.0, 0.85), (2.0, 0.7)):
        lines.append(f"{kappa},{rate},1000,42")
    path.write_text("\n".join(lines) + "\n")


class TestReaders:
    def test_sweep_roundtrip(self, tmp_path):
        path = tmp_path / "sweep.csv"
        synthetic_sweep_csv(path)
        table = read_sweep_csv(path)
        assert table.kappas.shape == (3,)
        assert table.times.shape == (5,)
        assert table.ress_sin.shape == (3, 5)
        assert not np.any(np.isnan(table.ress_sin))

    def test_schema_mismatch_names_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("kappa,T,n,seed,ress_sin,tau_sin,ress_cos,tau_cos\n1,1,1,1,1,1,1,1\n")
        with pytest.raises(SchemaError, match="wall_seconds"):
            read_sweep_csv(path)

    def test_empty_csv_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(SchemaError):
            read_sweep_csv(path)
        path.write_text("kappa,T,n,seed,ress_sin,tau_sin,ress_cos,tau_cos,wall_seconds\n")
        with pytest.raises(SchemaError, match="no data rows"):
            read_sweep_csv(path)

    def test_ragged_grid_rejected(self, tmp_path):
        path = tmp_path / "ragged.csv"
        header = "kappa,T,n,seed,ress_sin,tau_sin,ress_cos,tau_cos,wall_seconds"
        path.write_text(header + "\n1,1,1,1,1,1,1,1,0\n1,2,1,1,1,1,1,1,0\n2,1,1,1,1,1,1,1,0\n")
        with pytest.raises(SchemaError, match="grid"):
            read_sweep_csv(path)

    def test_baseline_reader(self, tmp_path):
        path = tmp_path / "base.csv"
        synthetic_baseline_csv(path)
        kappas, rates = read_baseline_csv(path)
        assert list(kappas) == [0.5, 1.0, 2.0]
        assert rates[0] > rates[-1]

    def test_samples_reader(self, tmp_path):
        path = tmp_path / "s.txt"
        path.write_text("0.5\n-0.25\n1.0\n")
        assert read_samples(path).shape == (3,)
        empty = tmp_path / "e.txt"
        empty.write_text("")
        with pytest.raises(SchemaError):
            read_samples(empty)


class TestRenderSynthetic:
    def test_all_four_render_and_are_deterministic(self, tmp_path):
        sweep = tmp_path / "sweep.csv"
        timing = tmp_path / "timing.csv"
        base = tmp_path / "base.csv"
        samples = tmp_path / "samples.txt"
        synthetic_sweep_csv(sweep)
        synthetic_sweep_csv(timing, timing=True)
        synthetic_baseline_csv(base)
        rng = np.random.default_rng(0)
        np.savetxt(samples, rng.uniform(-math.pi, math.pi, 2000))

        jobs = [
            (["ress-heatmaps", "--sweep", str(sweep)], "ress.png"),
            (["trace-acf-hist", "--samples", str(samples), "--kappa", "4"], "trace.png"),
            (["optimal-curves", "--sweep", str(sweep), "--baseline", str(base)], "opt.png"),
            (["cpu-heatmap", "--sweep", str(timing)], "cpu.png"),
        ]
        for argv, name in jobs:
            out1 = tmp_path / name
            out2 = tmp_path / ("again_" + name)
            assert main(argv + ["--out", str(out1)]) == 0
            assert main(argv + ["--out", str(out2)]) == 0
            assert out1.stat().st_size > 0
            assert out1.read_bytes() == out2.read_bytes()

    def test_cpu_heatmap_rejects_untimed_sweep(self, tmp_path):
        sweep = tmp_path / "sweep.csv"
        synthetic_sweep_csv(sweep, timing=False)
        assert main(["cpu-heatmap", "--sweep", str(sweep), "--out", str(tmp_path / "x.png")]) == 2

    def test_missing_file_exits_nonzero(self, tmp_path):
        assert main(["ress-heatmaps", "--sweep", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path / "o.png")]) == 2


pipeline = pytest.mark.skipif(VMHMC is None, reason="vmhmc CLI not installed")


@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    """Produce real sweep/baseline/sample files through the vmhmc CLI."""
    root = tmp_path_factory.mktemp("pipeline")
    sweep = root / "sweep.csv"
    timing = root / "timing.csv"
    base = root / "baseline.csv"
    samples = root / "samples.txt"
    if FULL:
        grid = ["--kappa-points", "24", "--t-points", "64", "--n", "100000"]
    else:
        grid = ["--kappa-points", "6", "--t-points", "16", "--n", "20000",
                "--burn-in", "500"]
    subprocess.run([VMHMC, "sweep", *grid, "--seed", "0", "--threads", "4",
                    "--out", str(sweep)], check=True)
    subprocess.run([VMHMC, "sweep", "--kappa-points", "3", "--t-points", "5",
                    "--n", "5000", "--seed", "0", "--timing",
                    "--out", str(timing)], check=True)
    subprocess.run([VMHMC, "baseline", "--kappa-points", "6", "--n", "20000",
                    "--seed", "0", "--out", str(base)], check=True)
    subprocess.run([VMHMC, "sample", "--kappa", "4", "--T", "2.32",
                    "--n", "20000", "--seed", "0", "--out", str(samples)],
                   check=True)
    return {"sweep": sweep, "timing": timing, "baseline": base, "samples": samples,
            "root": root}


@pipeline
def test_every_concentration_row_has_a_super_efficient_cell(artifacts):
    table = read_sweep_csv(artifacts["sweep"])
    mask_sin, _ = super_efficient_masks(table)
    assert mask_sin.any(axis=1).all(), "some kappa row lacks a RESS > 1 cell"


@pipeline
def test_acf_panel_alternates_sign(artifacts):
    samples = read_samples(artifacts["samples"])
    rho = acf(np.sin(samples), 4)
    assert rho[1] < 0.0 < rho[2]
    assert rho[3] < 0.0


@pipeline
def test_all_four_figures_render(artifacts):
    root = artifacts["root"]
    assert main(["ress-heatmaps", "--sweep", str(artifacts["sweep"]),
                 "--out", str(root / "fig1.png")]) == 0
    assert main(["trace-acf-hist", "--samples", str(artifacts["samples"]),
                 "--kappa", "4", "--out", str(root / "fig2.png")]) == 0
    assert main(["optimal-curves", "--sweep", str(artifacts["sweep"]),
                 "--baseline", str(artifacts["baseline"]),
                 "--out", str(root / "fig3.png")]) == 0
    assert main(["cpu-heatmap", "--sweep", str(artifacts["timing"]),
                 "--out", str(root / "fig4.png")]) == 0
    for name in ("fig1.png", "fig2.png", "fig3.png", "fig4.png"):
        assert (root / name).stat().st_size > 0


@pipeline
def test_optimal_curve_summaries_are_sane(artifacts):
    table = read_sweep_csv(artifacts["sweep"])
    t_star, best = optimal_curves_data(table)
    assert np.all(t_star >= table.times[0]) and np.all(t_star <= table.times[-1])
    assert np.all(best > 1.0)
