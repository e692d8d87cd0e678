"""End-to-end tests of the command-line surface (in-process)."""

import json
import math

import numpy as np
import pytest

from vmhmc.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestSample:
    def test_writes_wrapped_lines(self, tmp_path):
        out = tmp_path / "samples.txt"
        code = run_cli("sample", "--kappa", "4", "--T", "2.32", "--n", "5000",
                       "--seed", "7", "--out", str(out))
        assert code == 0
        values = np.loadtxt(out)
        assert values.shape == (5000,)
        assert np.all(values >= -math.pi)
        assert np.all(values < math.pi)

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        argv = ["sample", "--kappa", "4", "--T", "2.32", "--n", "2000", "--seed", "3"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_best_fisher_method(self, tmp_path):
        out = tmp_path / "bf.txt"
        code = run_cli("sample", "--kappa", "2", "--method", "best-fisher",
                       "--n", "1000", "--seed", "1", "--out", str(out))
        assert code == 0
        assert np.loadtxt(out).shape == (1000,)

    def test_invalid_kappa_exits_2(self):
        assert run_cli("sample", "--kappa", "-1", "--T", "1", "--n", "10") == 2

    def test_missing_travel_time_exits_2(self):
        assert run_cli("sample", "--kappa", "1", "--n", "10") == 2

    def test_unwritable_path_exits_1(self, tmp_path):
        code = run_cli("sample", "--kappa", "1", "--T", "1", "--n", "10",
                       "--out", str(tmp_path / "no" / "such" / "dir" / "f.txt"))
        assert code == 1


class TestSweep:
    ARGS = ["sweep", "--kappa-min", "0.5", "--kappa-max", "8", "--kappa-points", "3",
            "--t-min", "0", "--t-max", "6.0", "--t-points", "4",
            "--n", "2000", "--burn-in", "100", "--seed", "11"]

    def test_rows_and_determinism(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(self.ARGS + ["--out", str(a)]) == 0
        assert main(self.ARGS + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().strip().split("\n")
        assert lines[0] == "kappa,T,n,seed,ress_sin,tau_sin,ress_cos,tau_cos,wall_seconds"
        assert len(lines) == 1 + 3 * 4

    def test_thread_count_invariance(self, tmp_path):
        one, many = tmp_path / "one.csv", tmp_path / "many.csv"
        assert main(self.ARGS + ["--threads", "1", "--out", str(one)]) == 0
        assert main(self.ARGS + ["--threads", "8", "--out", str(many)]) == 0
        assert one.read_bytes() == many.read_bytes()

    def test_json_mirror(self, tmp_path):
        csv_path, json_path = tmp_path / "s.csv", tmp_path / "s.json"
        assert main(self.ARGS + ["--out", str(csv_path), "--json", str(json_path)]) == 0
        rows = json.loads(json_path.read_text())
        assert len(rows) == 12
        assert set(rows[0]) == {"kappa", "T", "n", "seed", "ress_sin", "tau_sin",
                                "ress_cos", "tau_cos", "wall_seconds"}

    def test_timing_mode_records_walls(self, tmp_path):
        out = tmp_path / "t.csv"
        assert main(self.ARGS + ["--timing", "--out", str(out)]) == 0
        walls = [float(line.split(",")[-1]) for line in out.read_text().strip().split("\n")[1:]]
        assert all(w > 0.0 for w in walls)

    def test_bad_grid_exits_2(self, tmp_path):
        assert run_cli("sweep", "--kappa-min", "5", "--kappa-max", "1",
                       "--out", str(tmp_path / "x.csv")) == 2


class TestOptimalT:
    def test_writes_csv(self, tmp_path):
        out = tmp_path / "opt.csv"
        code = run_cli("optimal-t", "--kappa", "4", "--t-points", "12",
                       "--n", "4000", "--seed", "2", "--out", str(out))
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "kappa,T_star,ress_at_star"
        kappa, t_star, ress_star = map(float, lines[1].split(","))
        assert kappa == 4.0
        assert 0.0 <= t_star <= 2.5 * math.pi


class TestBaseline:
    def test_writes_csv(self, tmp_path):
        out = tmp_path / "base.csv"
        code = run_cli("baseline", "--kappa-points", "3", "--n", "3000",
                       "--seed", "5", "--out", str(out))
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "kappa,acceptance_rate,n,seed"
        assert len(lines) == 4


class TestValidate:
    def test_default_suite_passes(self, capsys):
        code = run_cli("validate", "--n", "30000", "--tuples", "150", "--seed", "1")
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out
        assert "FAIL" not in out

    def test_injected_fault_exits_3(self, capsys):
        code = run_cli("validate", "--kappa", "4", "--n", "30000",
                       "--tuples", "60", "--inject-fault")
        assert code == 3
        assert "FAIL" in capsys.readouterr().out

    def test_too_small_n_exits_2(self):
        assert run_cli("validate", "--n", "100") == 2

    def test_unknown_subcommand_exits_2(self):
        assert run_cli("frobnicate") == 2


class TestSeedEnvOverride:
    def test_env_seed_used_when_flag_absent(self, tmp_path, monkeypatch):
        a, b, c = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "c.txt"
        argv = ["sample", "--kappa", "2", "--T", "1.5", "--n", "500"]
        monkeypatch.setenv("VMHMC_SEED", "99")
        assert main(argv + ["--out", str(a)]) == 0
        monkeypatch.delenv("VMHMC_SEED")
        assert main(argv + ["--seed", "99", "--out", str(b)]) == 0
        assert main(argv + ["--seed", "1", "--out", str(c)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.read_bytes() != c.read_bytes()
