import json
import math

import pytest
from click.testing import CliRunner

from gyrolis.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def run_ok(runner, args, **kwargs):
    result = runner.invoke(cli, args, catch_exceptions=False, **kwargs)
    assert result.exit_code == 0, result.output
    return result


def test_analyze_case_a(runner):
    result = run_ok(runner, ["analyze", "--pair", "11", "9"])
    doc = json.loads(result.output)
    assert doc["schema_version"] == "1"
    assert doc["provenance"] == "analytic"
    pair = doc["results"]["pair"]
    assert pair["degenerate"] is True and pair["delta"] == 2
    ins = doc["results"]["inscribed"]
    assert ins["certified"] is True
    assert ins["r_res"] == 0.0
    assert ins["t_min_approx"] == pytest.approx(15.6, abs=0.1)


def test_analyze_case_b(runner):
    doc = json.loads(run_ok(runner, ["analyze", "--pair", "6", "5"]).output)
    ins = doc["results"]["inscribed"]
    assert ins["r_res"] == pytest.approx(5.075e-2, abs=1e-3)
    assert ins["theta_asy"] == pytest.approx(3.30, abs=0.01)
    assert ins["error_bound"] == pytest.approx(2.33e-2, abs=1e-3)
    assert doc["results"]["system"]["n"] == pytest.approx(0.1826, abs=5e-4)


def test_analyze_rejects_non_coprime(runner):
    result = runner.invoke(cli, ["analyze", "--pair", "6", "4"])
    assert result.exit_code != 0
    assert "not coprime" in result.output


def test_analyze_requires_exactly_one_source(runner):
    assert runner.invoke(cli, ["analyze"]).exit_code != 0
    assert runner.invoke(cli, ["analyze", "--pair", "4", "3", "--n", "0.2"]).exit_code != 0


def test_analyze_uncoupled_reports_uncertified_circle(runner):
    doc = json.loads(run_ok(runner, ["analyze", "--n", "0"]).output)
    assert doc["provenance"] == "oracle"
    assert doc["results"]["system"]["omega1"] == 1.0
    assert doc["results"]["match"]["found"] is False
    unc = doc["results"]["uncertified_minimum"]
    assert unc["certified"] is False
    assert unc["r_min"] == pytest.approx(1.0, abs=1e-6)


def test_analyze_matches_pair_from_coupling(runner):
    doc = json.loads(
        run_ok(runner, ["analyze", "--n", "0.201", "--tol", "1e-3"]).output
    )
    assert doc["results"]["match"]["found"] is True
    assert doc["results"]["pair"]["tau"] == 11
    assert doc["results"]["pair"]["sigma"] == 9


def test_analyze_negative_coupling_swaps_modes(runner):
    doc = json.loads(run_ok(runner, ["analyze", "--pair", "4", "3", "--negative-n"]).output)
    system = doc["results"]["system"]
    assert system["n"] < 0
    assert system["omega1"] < system["omega2"]


def test_trace_csv_contract(runner, tmp_path):
    out = tmp_path / "trace.csv"
    result = run_ok(
        runner,
        ["trace", "--n", "0.5", "--qdot0", "1", "--t-end", "1", "--dt", "0.5",
         "--out", str(out)],
    )
    doc = json.loads(result.output)
    assert doc["results"]["rows"] == 3
    lines = out.read_text().splitlines()
    assert lines[0] == "t,q,qdot,z,zdot,hq,hz,h"
    assert len(lines) == 4
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and float(first[2]) == 1.0


def test_trace_deterministic_bytes(runner, tmp_path):
    args = ["trace", "--n", "0.2887", "--qdot0", "1", "--t-end", "50", "--dt", "0.1"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    r1 = run_ok(runner, args + ["--out", str(out1)])
    r2 = run_ok(runner, args + ["--out", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()
    assert r1.output.replace(str(out1), "X") == r2.output.replace(str(out2), "X")


def test_envelope_csv_contract(runner, tmp_path):
    out = tmp_path / "env.csv"
    doc = json.loads(
        run_ok(
            runner,
            ["envelope", "--n", "0", "--qdot0", "2", "--count", "16", "--out", str(out)],
        ).output
    )
    assert doc["results"]["support_at_half_pi"] == pytest.approx(2.0, abs=1e-12)
    lines = out.read_text().splitlines()
    assert lines[0] == "phi,q,qdot"
    assert len(lines) == 17
    for line in lines[1:]:
        _, q, qdot = map(float, line.split(","))
        # 12-significant-digit cells round-trip to ~1e-12 relative
        assert math.hypot(q, qdot) == pytest.approx(2.0, abs=1e-10)


def test_pareto_outputs(runner, tmp_path):
    out = tmp_path / "pareto.csv"
    doc = json.loads(
        run_ok(
            runner,
            ["pareto", "--max-order", "12", "--beat-min", "1", "--out", str(out)],
        ).output
    )
    lines = out.read_text().splitlines()
    assert lines[0] == "tau,sigma,n,r_res_unit,t_min,dominated"
    assert len(lines) == doc["results"]["pairs_scored"] + 1
    frontier_path = tmp_path / "pareto_frontier.json"
    frontier = json.loads(frontier_path.read_text())
    assert len(frontier["results"]["frontier"]) == doc["results"]["frontier_size"]
    for point in frontier["results"]["frontier"]:
        assert point["dominated"] is False


def test_design_absorb_json(runner, tmp_path):
    out = tmp_path / "design.json"
    result = run_ok(
        runner,
        ["design", "--objective", "absorb", "--t-max", "16", "--beat-min", "10",
         "--max-order", "25", "--out", str(out)],
    )
    doc = json.loads(result.output)
    assert doc["results"]["feasible"] is True
    chosen = doc["results"]["chosen"]
    assert (chosen["tau"], chosen["sigma"]) == (11, 9)
    assert chosen["r_res_at_d"] == 0.0
    assert json.loads(out.read_text()) == doc


def test_design_infeasible_is_reported_not_raised(runner, tmp_path):
    doc = json.loads(
        run_ok(
            runner,
            ["design", "--objective", "absorb", "--t-max", "1", "--beat-min", "10",
             "--max-order", "20", "--out", str(tmp_path / "design.json")],
        ).output
    )
    assert doc["results"]["feasible"] is False
    assert doc["results"]["chosen"] is None
    assert "t_max" in doc["results"]["rationale"]


def test_verify_exits_nonzero_on_disagreement(runner, tmp_path, monkeypatch):
    import gyrolis.cli as cli_mod

    real = cli_mod.inscribed.inscribed_radius_exact

    def skewed(param):
        report = real(param)
        return type(report)(
            degenerate=report.degenerate, r_res=report.r_res + 0.5,
            theta_min=report.theta_min, theta_asy=report.theta_asy,
            error_bound=report.error_bound, t_min_exact=report.t_min_exact,
            t_min_approx=report.t_min_approx, h_q_min=report.h_q_min,
        )

    monkeypatch.setattr(cli_mod.inscribed, "inscribed_radius_exact", skewed)
    result = runner.invoke(
        cli, ["verify", "--max-order", "5", "--out", str(tmp_path / "v.csv")]
    )
    assert result.exit_code == 1
    doc = json.loads(result.output)
    assert doc["results"]["passed"] is False


def test_verify_passes_and_writes_table(runner, tmp_path):
    out = tmp_path / "verify.csv"
    result = run_ok(runner, ["verify", "--max-order", "12", "--out", str(out)])
    doc = json.loads(result.output)
    assert doc["provenance"] == "both"
    assert doc["results"]["passed"] is True
    assert doc["results"]["failures"] == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "tau,sigma,degenerate,r_exact,r_oracle,abs_diff,passed"
    assert len(lines) == doc["results"]["pairs"] + 1
    assert all(line.endswith("true") for line in lines[1:])


def test_config_file_presets_and_flag_override(runner, tmp_path):
    cfg = tmp_path / "gyrolis.cfg"
    cfg.write_text("# defaults\ntol = 1e-3\n")
    doc = json.loads(
        run_ok(runner, ["analyze", "--n", "0.201", "--config", str(cfg)]).output
    )
    assert doc["results"]["match"]["found"] is True  # loose tol from config

    doc = json.loads(
        run_ok(
            runner,
            ["analyze", "--n", "0.201", "--config", str(cfg), "--tol", "1e-9"],
        ).output
    )
    assert doc["results"]["match"]["found"] is False  # flag overrides config


def test_config_rejects_unknown_keys(runner, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("speed = 11\n")
    result = runner.invoke(cli, ["analyze", "--n", "0.2", "--config", str(cfg)])
    assert result.exit_code != 0
    assert "unknown config key" in result.output


def test_unwritable_output_path_reports_cleanly(runner, tmp_path):
    blocker = tmp_path / "blocker.txt"
    blocker.write_text("not a directory")
    out = blocker / "trace.csv"
    result = runner.invoke(
        cli,
        ["trace", "--n", "0.5", "--t-end", "1", "--dt", "0.5", "--out", str(out)],
    )
    assert result.exit_code != 0
    assert "cannot write" in result.output


def test_outdir_env_var(runner, tmp_path):
    env = {"GYROLIS_OUTDIR": str(tmp_path / "reports")}
    run_ok(
        runner,
        ["envelope", "--n", "1.0", "--count", "16"],
        env=env,
    )
    assert (tmp_path / "reports" / "envelope.csv").exists()


def test_plot_writes_figures(runner, tmp_path):
    run_ok(
        runner,
        ["trace", "--pair", "6", "5", "--t-end", "40", "--dt", "0.05",
         "--out", str(tmp_path / "t.csv"), "--plot"],
    )
    run_ok(
        runner,
        ["envelope", "--n", "2.0", "--out", str(tmp_path / "e.csv"), "--plot"],
    )
    run_ok(
        runner,
        ["pareto", "--max-order", "12", "--out", str(tmp_path / "p.csv"), "--plot"],
    )
    run_ok(
        runner,
        ["design", "--objective", "contain", "--t-max", "18", "--max-order", "25",
         "--out", str(tmp_path / "d.json"), "--plot"],
    )
    for name in ("t.png", "e.png", "p.png", "d.png"):
        assert (tmp_path / name).stat().st_size > 0
