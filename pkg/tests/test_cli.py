import filecmp
from pathlib import Path

import pytest

from mgdesign.cli import main

A5_ARG = "pv=418,wt=123,dg=0,bess=704,conv=255"


def _run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_bundled_ok(self, capsys):
        code, out, _ = _run(capsys, "validate")
        assert code == 0
        assert "scenario OK" in out

    def test_broken_scenario_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("series: {}\n", encoding="utf-8")
        code, _, err = _run(capsys, "validate", "--scenario", str(bad))
        assert code != 0
        assert "error" in err


class TestEvaluate:
    def test_a5_summary_and_files(self, capsys, tmp_path):
        out = tmp_path / "run"
        code, stdout, _ = _run(capsys, "evaluate", "--design", A5_ARG, "--out", str(out))
        assert code == 0
        assert "npc_usd" in stdout
        metrics = (out / "metrics.csv").read_text().splitlines()
        assert metrics[0].startswith("pv_kw,wt_kw,dg_kw,bess_kwh,converter_kw,grid_cap_kw,npc_usd")
        assert len(metrics) == 2

    def test_trace_flag(self, capsys, tmp_path):
        out = tmp_path / "run"
        code, _, _ = _run(capsys, "evaluate", "--design", "pv=10,conv=10", "--out", str(out),
                          "--trace")
        assert code == 0
        assert (out / "trace.csv").exists()

    def test_bad_design_exits_nonzero(self, capsys, tmp_path):
        code, _, err = _run(capsys, "evaluate", "--design", "pv=-5", "--out", str(tmp_path))
        assert code != 0
        assert "error" in err


class TestSearch:
    SPACE = "pv=0:150:75,bess=0:200:200,conv=100"

    def test_search_writes_results_and_pareto(self, capsys, tmp_path):
        out = tmp_path / "s"
        code, stdout, _ = _run(capsys, "search", "--space", self.SPACE, "--out", str(out))
        assert code == 0
        results = (out / "results.csv").read_text().splitlines()
        assert len(results) == 1 + 6
        assert (out / "pareto.csv").exists()
        assert "non-dominated" in stdout

    def test_empty_lattice_errors(self, capsys, tmp_path):
        code, _, err = _run(capsys, "search", "--space", "pv=10:0:5", "--out", str(tmp_path))
        assert code != 0
        assert "error" in err

    def test_budget_excluding_everything_errors(self, capsys, tmp_path):
        code, _, err = _run(capsys, "search", "--space", "pv=100:200:100",
                            "--budget", "1", "--out", str(tmp_path))
        assert code != 0
        assert "no feasible design" in err


class TestDeterminism:
    def test_repeated_runs_byte_identical(self, capsys, tmp_path):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        for out in (out1, out2):
            code, _, _ = _run(capsys, "search", "--space", "pv=0:150:150,conv=100",
                              "--out", str(out), "--seed", "42")
            assert code == 0
        for name in ("results.csv", "pareto.csv"):
            assert filecmp.cmp(out1 / name, out2 / name, shallow=False)
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_rl_search_byte_identical(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            code, _, _ = _run(capsys, "rl-search", "--space", "pv=0:100:100,conv=100",
                              "--episodes", "10", "--out", str(out), "--seed", "7")
            assert code == 0
        assert (out1 / "rl_archive.csv").read_bytes() == (out2 / "rl_archive.csv").read_bytes()


class TestPipelines:
    def test_pareto_command_roundtrip(self, capsys, tmp_path):
        out = tmp_path / "s"
        _run(capsys, "search", "--space", "pv=0:150:75,conv=100", "--out", str(out))
        code, stdout, _ = _run(capsys, "pareto", "--results", str(out / "results.csv"),
                               "--out", str(out))
        assert code == 0
        plot = (out / "pareto_plotdata.csv").read_text().splitlines()
        assert "non_dominated" in plot[0]
        assert len(plot) == 4

    def test_refine_improves_or_holds(self, capsys, tmp_path):
        out = tmp_path / "r"
        code, stdout, _ = _run(capsys, "refine", "--design", "pv=100,conv=100",
                               "--out", str(out), "--max-cycles", "3")
        assert code == 0
        assert (out / "refined.csv").exists()

    def test_sensitivity_csv(self, capsys, tmp_path):
        out = tmp_path / "sens"
        code, stdout, _ = _run(capsys, "sensitivity", "--design", A5_ARG, "--out", str(out))
        assert code == 0
        lines = (out / "sensitivity.csv").read_text().splitlines()
        assert len(lines) == 13

    def test_lcoe_sweep_all_parameters(self, capsys, tmp_path):
        out = tmp_path / "sweep"
        code, stdout, _ = _run(capsys, "lcoe-sweep", "--design", A5_ARG, "--out", str(out),
                               "--multipliers", "0.9,1.0,1.1")
        assert code == 0
        for name in ("purchase_price", "sellback_price", "battery_capital", "pv_capital"):
            assert (out / f"lcoe_{name}.csv").exists()

    def test_env_override_out(self, capsys, tmp_path, monkeypatch):
        target = tmp_path / "env_out"
        monkeypatch.setenv("MGDESIGN_OUT", str(target))
        code, _, _ = _run(capsys, "evaluate", "--design", "pv=10,conv=10")
        assert code == 0
        assert (target / "metrics.csv").exists()
