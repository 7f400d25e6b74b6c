import subprocess
import sys

import pytest

from beeopt import cli, harness
from beeopt.harness import CSV_COLUMNS, FIGURE_COLUMNS, SUMMARY_COLUMNS


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _header(path):
    return tuple(path.read_text().splitlines()[0].split(","))


class TestRun:
    def test_rev_ba_sphere(self, capsys, tmp_path):
        out_file = tmp_path / "o.csv"
        code, out, _ = run(capsys, "run", "--algo", "rev-ba", "--bench", "sphere", "--dim", "5",
                           "--iters", "200", "--seed", "42", "--out", str(out_file))
        assert code == 0
        algo, bench, dim, iters, gap = out.split()
        assert (algo, bench, dim, iters) == ("rev-ba", "sphere", "5", "200")
        assert float(gap) <= 1e-12
        assert _header(out_file) == CSV_COLUMNS
        assert len(harness.read_results_csv(out_file)) == 10

    def test_bad_dim(self, capsys):
        code, _, err = run(capsys, "run", "--algo", "ba", "--bench", "rosenbrock", "--dim", "1",
                           "--iters", "5")
        assert code == 2 and "--dim" in err

    def test_bad_algo(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["run", "--algo", "nosuch", "--bench", "sphere", "--dim", "2",
                      "--iters", "1"])
        assert exc.value.code == 2
        err = capsys.readouterr().err
        assert all(a in err for a in harness.ALGORITHM_IDS)

    def test_bad_param(self, capsys):
        code, _, err = run(capsys, "run", "--algo", "ba", "--bench", "sphere", "--dim", "2",
                           "--iters", "1", "--param", "nosuch=1")
        assert code == 2 and "--param" in err

    def test_identical_bytes(self, capsys, tmp_path):
        args = ["run", "--algo", "hybrid", "--bench", "ackley", "--dim", "3", "--iters", "5",
                "--reps", "2", "--format", "json", "--trace"]
        for name in ("a.json", "b.json"):
            assert run(capsys, *args, "--out", str(tmp_path / name))[0] == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_param_override(self, capsys):
        code, out, _ = run(capsys, "run", "--algo", "abc", "--bench", "sphere", "--dim", "2",
                           "--iters", "3", "--reps", "1", "--param", "limit=5",
                           "--param", "phi=0.5")
        assert code == 0 and out.startswith("abc sphere 2 3 ")


CONFIG = """algorithm = ba, hybrid
benchmark = sphere, rosenbrock, ackley, griewank, rastrigin, schwefel
dimension = 2
iterations = 3, 4
reps = 2
"""


class TestSuite:
    def test_suite_resume_and_report(self, capsys, tmp_path):
        cfg = tmp_path / "grid.cfg"
        cfg.write_text(CONFIG)
        out = tmp_path / "res"
        code, stdout, _ = run(capsys, "suite", "--config", str(cfg), "--out", str(out))
        assert code == 0
        files = sorted(p.name for p in out.iterdir())
        assert files == ["results_D2_I3.csv", "results_D2_I4.csv", "summary.csv"]
        assert _header(out / "results_D2_I3.csv") == CSV_COLUMNS
        assert _header(out / "summary.csv") == SUMMARY_COLUMNS
        assert len(harness.read_results_csv(out / "results_D2_I3.csv")) == 2 * 6 * 2

        code, stdout, _ = run(capsys, "suite", "--config", str(cfg), "--out", str(out))
        assert code == 0 and stdout.count("skip") == 2

        code, stdout, _ = run(capsys, "report", "--in", str(out))
        assert code == 0
        lines = stdout.splitlines()
        assert tuple(lines[0].split(",")) == FIGURE_COLUMNS
        assert len(lines) == 1 + 2 * 2  # one row per algorithm per iteration level
        code, stdout, _ = run(capsys, "report", "--in", str(out), "--group-by", "iters")
        assert code == 0 and len(stdout.splitlines()) == 5

    def test_corrupt_cell_rerun(self, capsys, tmp_path):
        cfg = tmp_path / "grid.cfg"
        cfg.write_text(CONFIG.replace("iterations = 3, 4", "iterations = 3"))
        out = tmp_path / "res"
        assert run(capsys, "suite", "--config", str(cfg), "--out", str(out))[0] == 0
        (out / "results_D2_I3.csv").write_text(",".join(CSV_COLUMNS) + "\n")
        code, stdout, _ = run(capsys, "suite", "--config", str(cfg), "--out", str(out))
        assert code == 0 and "done results_D2_I3.csv" in stdout

    def test_failed_cell_reported(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "grid.cfg"
        cfg.write_text(CONFIG)
        real = harness.run_experiments

        def flaky(configs, jobs=1):
            if configs[0].iterations == 3:
                raise RuntimeError("boom")
            return real(configs, jobs)

        monkeypatch.setattr(harness, "run_experiments", flaky)
        code, _, err = run(capsys, "suite", "--config", str(cfg), "--out", str(tmp_path / "r"))
        assert code == 1
        assert "results_D2_I3.csv" in err
        assert (tmp_path / "r" / "results_D2_I4.csv").exists()

    def test_missing_config(self, capsys, tmp_path):
        code, _, err = run(capsys, "suite", "--config", str(tmp_path / "missing.cfg"))
        assert code == 2 and "--config" in err

    def test_paper_grid_dry_run(self, capsys):
        code, out, _ = run(capsys, "suite", "--paper-grid", "--dry-run")
        lines = out.splitlines()
        assert code == 0 and len(lines) == 14
        assert lines[0].startswith("results_D5_I200.csv 30 configs 300 runs")

    def test_report_errors(self, capsys, tmp_path):
        assert run(capsys, "report", "--in", str(tmp_path))[0] == 2
        assert run(capsys, "report", "--in", str(tmp_path / "nope"))[0] == 2
        code, _, err = run(capsys, "report", "--in", str(tmp_path), "--group-by", "seed")
        assert code == 2 and "--group-by" in err


class TestList:
    def test_contents(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0
        assert "schwefel [-500,500] opt=-418.9829*D" in out
        for a in harness.ALGORITHM_IDS:
            assert f"  {a}\n" in out

    def test_help_via_module(self):
        proc = subprocess.run([sys.executable, "-m", "beeopt", "list", "--help"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "usage" in proc.stdout
