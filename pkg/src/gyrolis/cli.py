"""Command-line surface: analysis reports, data emission, design, verification.

Every command prints a ReportDocument as JSON on stdout and, where it emits
files, writes CSV/JSON with deterministic formatting (12-significant-digit
scientific floats, LF endings, stable key order) so identical invocations
are byte-identical.  --plot additionally renders matplotlib figures next to
the delimited output.

Exit codes: 0 when all requested computations are certified or explicitly
flagged uncertified, 1 when a verification run finds disagreement, 2 on
input errors.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

import click

from . import design as design_mod
from . import dynamics, envelope, inscribed, oracle, resonance
from .report import ReportDocument, write_csv, write_text

_OUTDIR_ENV = "GYROLIS_OUTDIR"
_CONFIG_CASTS = {"tol": float, "grid_points": int, "t_min_mode": str, "outdir": str}


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    cfg = {}
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{line_no}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_CASTS:
            raise click.UsageError(
                f"{path}:{line_no}: unknown config key {key!r} "
                f"(known: {', '.join(sorted(_CONFIG_CASTS))})"
            )
        try:
            cfg[key] = _CONFIG_CASTS[key](value)
        except ValueError as exc:
            raise click.UsageError(f"{path}:{line_no}: bad value for {key}: {exc}")
    return cfg


def _setting(flag_value, cfg: dict, key: str, default):
    if flag_value is not None:
        return flag_value
    if key in cfg:
        return cfg[key]
    return default


def _outdir(flag_value, cfg: dict) -> Path:
    return Path(_setting(flag_value, cfg, "outdir", os.environ.get(_OUTDIR_ENV, ".")))


def _make_pair(tau: int, sigma: int) -> resonance.ResonantPair:
    try:
        return resonance.make_pair(tau, sigma)
    except (resonance.NotCoprimeError, resonance.PairOrderingError) as exc:
        raise click.UsageError(str(exc))


def _resolve_source(pair_args, coupling, negative_n):
    """(system, pair | None, signed n) from --pair or --n."""
    if (pair_args is None) == (coupling is None):
        raise click.UsageError("provide exactly one of --pair TAU SIGMA or --n VALUE")
    if pair_args is not None:
        pair = _make_pair(*pair_args)
        n = resonance.coupling_from_pair(pair)
        if negative_n:
            n = -n
        return dynamics.modal_system(n), pair, n
    try:
        system = dynamics.modal_system(coupling)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    return system, None, coupling


def _pair_results(pair, n_signed, m_threshold):
    cls = resonance.classify(pair, m_threshold)
    return {
        "tau": pair.tau,
        "sigma": pair.sigma,
        "delta": pair.delta,
        "order": pair.order,
        "coupling": resonance.coupling_from_pair(pair),
        "coupling_signed": n_signed,
        "beat_ratio": pair.beat_ratio,
        "degenerate": resonance.is_degenerate(pair),
        "classification": cls.kind,
        "m_threshold": cls.m_threshold,
    }


def _inscribed_results(report, qdot0):
    return {
        "certified": True,
        "qdot0": qdot0,
        "degenerate": report.degenerate,
        "r_res": report.r_res,
        "h_q_min": report.h_q_min,
        "theta_min": report.theta_min,
        "theta_asy": report.theta_asy,
        "error_bound": report.error_bound,
        "t_min_approx": report.t_min_approx,
        "t_min_exact": report.t_min_exact,
    }


def _system_results(system):
    return {
        "n": system.n,
        "omega1": system.omega1,
        "omega2": system.omega2,
        "omega_product": system.omega1 * system.omega2,
    }


def _must_write(writer, path: Path, *args) -> None:
    try:
        writer(path, *args)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}")


def _emit(doc: ReportDocument, out: Path | None) -> None:
    text = doc.to_json()
    if out is not None:
        _must_write(write_text, out, text)
    click.echo(text, nl=False)


def _pareto_point_dict(point) -> dict:
    return {
        "tau": point.pair.tau,
        "sigma": point.pair.sigma,
        "n": point.n,
        "r_res_unit": point.r_res_unit,
        "t_min": point.t_min,
        "dominated": point.dominated,
    }


@click.group()
def cli():
    """Analyze and design gyroscopic couplings for a conservative 2-DOF system."""


@cli.command()
@click.option("--pair", nargs=2, type=int, default=None, help="Resonant pair TAU SIGMA.")
@click.option("--n", "coupling", type=float, default=None, help="Coupling strength n.")
@click.option("--negative-n", is_flag=True, help="Use -n for the system built from --pair.")
@click.option("--qdot0", type=float, default=1.0, show_default=True, help="Impulse size.")
@click.option("--tol", type=float, default=None, help="Pair-matching tolerance on n [1e-9].")
@click.option("--max-order", type=int, default=100, show_default=True,
              help="Bound on tau+sigma for pair matching.")
@click.option("--m-threshold", type=int, default=10, show_default=True,
              help="Low-order classification threshold M.")
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Also write the JSON report here.")
@click.option("--config", type=click.Path(exists=True), default=None)
def analyze(pair, coupling, negative_n, qdot0, tol, max_order, m_threshold, out, config):
    """Full resonance and inscribed-radius report for a pair or a coupling n."""
    cfg = _load_config(config)
    tol = _setting(tol, cfg, "tol", 1e-9)
    system, found, n_signed = _resolve_source(pair, coupling, negative_n)
    provenance = "analytic"
    results = {"system": _system_results(system)}

    if found is None:
        found = resonance.pair_from_coupling(coupling, tol=tol, max_order=max_order)
        results["match"] = {
            "found": found is not None,
            "tol": tol,
            "max_order": max_order,
            "residual": (
                None if found is None
                else abs(resonance.coupling_from_pair(found) - abs(coupling))
            ),
        }

    if found is not None:
        results["pair"] = _pair_results(found, n_signed, m_threshold)
        report = inscribed.inscribed_radius_exact(inscribed.resonant_param(found, qdot0))
        results["inscribed"] = _inscribed_results(report, qdot0)
    else:
        ocfg = oracle.OracleConfig(grid_points=cfg.get("grid_points", 20000))
        r_min, t_at_min = oracle.min_radius_sweep(system, qdot0, ocfg)
        provenance = "oracle"
        results["uncertified_minimum"] = {
            "certified": False,
            "qdot0": qdot0,
            "r_min": r_min,
            "t_at_min": t_at_min,
            "horizon_periods": ocfg.horizon_periods,
            "grid_points": ocfg.grid_points,
        }

    inputs = {
        "pair": list(pair) if pair else None,
        "n": coupling,
        "negative_n": negative_n,
        "qdot0": qdot0,
        "tol": tol,
        "max_order": max_order,
        "m_threshold": m_threshold,
    }
    _emit(ReportDocument("analyze", inputs, provenance, results), out)


@cli.command()
@click.option("--pair", nargs=2, type=int, default=None, help="Resonant pair TAU SIGMA.")
@click.option("--n", "coupling", type=float, default=None, help="Coupling strength n.")
@click.option("--negative-n", is_flag=True)
@click.option("--qdot0", type=float, default=1.0, show_default=True)
@click.option("--t-end", type=float, required=True)
@click.option("--dt", type=float, required=True)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="CSV path [outdir/trace.csv].")
@click.option("--outdir", type=click.Path(path_type=Path), default=None)
@click.option("--plot", is_flag=True, help="Render a phase/energy figure next to the CSV.")
@click.option("--config", type=click.Path(exists=True), default=None)
def trace(pair, coupling, negative_n, qdot0, t_end, dt, out, outdir, plot, config):
    """Time-series CSV (t, q, qdot, z, zdot, hq, hz, h) of the impulse response."""
    cfg = _load_config(config)
    system, found, _ = _resolve_source(pair, coupling, negative_n)
    try:
        traj = dynamics.impulse_trajectory(system, qdot0)
        samples = dynamics.sample_trace(traj, t_end, dt)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    out = out if out is not None else _outdir(outdir, cfg) / "trace.csv"
    _must_write(
        write_csv,
        out,
        ["t", "q", "qdot", "z", "zdot", "hq", "hz", "h"],
        ([s.t, s.q, s.qdot, s.z, s.zdot, s.hq, s.hz, s.h] for s in samples),
    )

    h0 = 0.5 * qdot0 * qdot0
    drift = max(abs(s.h - h0) for s in samples) / h0 if h0 > 0 else 0.0
    results = {
        "system": _system_results(system),
        "csv": str(out),
        "rows": len(samples),
        "h_rel_drift_max": drift,
    }
    files = {"csv": str(out)}
    if plot:
        from . import figures

        if found is None:
            found = resonance.pair_from_coupling(system.n, tol=1e-9, max_order=100)
        curve = envelope.sample_envelope(system, qdot0, 512)
        r_res = t_min = None
        if found is not None:
            rep = inscribed.inscribed_radius_exact(inscribed.resonant_param(found, qdot0))
            r_res, t_min = rep.r_res, rep.t_min_approx
        fig_path = out.with_suffix(".png")
        figures.save_trace_figure(fig_path, samples, curve, r_res, t_min)
        files["figure"] = str(fig_path)
    results["files"] = files

    inputs = {
        "pair": list(pair) if pair else None,
        "n": coupling,
        "negative_n": negative_n,
        "qdot0": qdot0,
        "t_end": t_end,
        "dt": dt,
    }
    _emit(ReportDocument("trace", inputs, "analytic", results), None)


@cli.command("envelope")
@click.option("--pair", nargs=2, type=int, default=None, help="Resonant pair TAU SIGMA.")
@click.option("--n", "coupling", type=float, default=None, help="Coupling strength n.")
@click.option("--negative-n", is_flag=True)
@click.option("--qdot0", type=float, default=1.0, show_default=True)
@click.option("--count", type=int, default=512, show_default=True,
              help="Number of sampled directions.")
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="CSV path [outdir/envelope.csv].")
@click.option("--outdir", type=click.Path(path_type=Path), default=None)
@click.option("--plot", is_flag=True)
@click.option("--config", type=click.Path(exists=True), default=None)
def envelope_cmd(pair, coupling, negative_n, qdot0, count, out, outdir, plot, config):
    """Convex envelope boundary CSV (phi, q, qdot) of the projected set."""
    cfg = _load_config(config)
    system, _, _ = _resolve_source(pair, coupling, negative_n)
    try:
        curve = envelope.sample_envelope(system, qdot0, count)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    out = out if out is not None else _outdir(outdir, cfg) / "envelope.csv"
    _must_write(
        write_csv,
        out,
        ["phi", "q", "qdot"],
        (
            [float(curve.phi[i]), float(curve.points[i, 0]), float(curve.points[i, 1])]
            for i in range(count)
        ),
    )
    results = {
        "system": _system_results(system),
        "csv": str(out),
        "count": count,
        "support_at_half_pi": float(envelope.support(system, curve.rho0, math.pi / 2.0)),
    }
    files = {"csv": str(out)}
    if plot:
        from . import figures

        fig_path = out.with_suffix(".png")
        figures.save_envelope_figure(fig_path, curve)
        files["figure"] = str(fig_path)
    results["files"] = files

    inputs = {
        "pair": list(pair) if pair else None,
        "n": coupling,
        "negative_n": negative_n,
        "qdot0": qdot0,
        "count": count,
    }
    _emit(ReportDocument("envelope", inputs, "analytic", results), None)


@cli.command()
@click.option("--max-order", type=int, default=40, show_default=True)
@click.option("--beat-min", type=float, default=1.0, show_default=True)
@click.option("--t-min-mode", type=click.Choice(["approx", "exact"]), default=None)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="CSV path [outdir/pareto.csv]; frontier JSON gets suffix _frontier.json.")
@click.option("--outdir", type=click.Path(path_type=Path), default=None)
@click.option("--plot", is_flag=True)
@click.option("--config", type=click.Path(exists=True), default=None)
def pareto(max_order, beat_min, t_min_mode, out, outdir, plot, config):
    """Score all pairs and emit the (r_res, t_min) cloud plus its frontier."""
    cfg = _load_config(config)
    t_min_mode = _setting(t_min_mode, cfg, "t_min_mode", "approx")
    try:
        points = design_mod.pareto_frontier(max_order, beat_min, t_min_mode)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    out = out if out is not None else _outdir(outdir, cfg) / "pareto.csv"
    _must_write(
        write_csv,
        out,
        ["tau", "sigma", "n", "r_res_unit", "t_min", "dominated"],
        (
            [p.pair.tau, p.pair.sigma, p.n, p.r_res_unit, p.t_min, p.dominated]
            for p in points
        ),
    )
    frontier = [p for p in points if not p.dominated]
    json_path = out.with_name(out.stem + "_frontier.json")
    inputs = {"max_order": max_order, "beat_min": beat_min, "t_min_mode": t_min_mode}
    frontier_doc = ReportDocument(
        "pareto", inputs, "analytic",
        {"frontier": [_pareto_point_dict(p) for p in frontier]},
    )
    _must_write(write_text, json_path, frontier_doc.to_json())

    files = {"csv": str(out), "frontier_json": str(json_path)}
    if plot:
        from . import figures

        fig_path = out.with_suffix(".png")
        figures.save_pareto_figure(fig_path, points)
        files["figure"] = str(fig_path)

    results = {
        "pairs_scored": len(points),
        "frontier_size": len(frontier),
        "files": files,
    }
    _emit(ReportDocument("pareto", inputs, "analytic", results), None)


@cli.command()
@click.option("--objective", type=click.Choice(["absorb", "contain"]), required=True)
@click.option("--t-max", type=float, required=True, help="Responsiveness bound on t_min.")
@click.option("--beat-min", type=float, default=10.0, show_default=True)
@click.option("--max-order", type=int, default=40, show_default=True)
@click.option("--exclude-low-order", type=int, default=None,
              help="Drop pairs with tau+sigma <= M.")
@click.option("--d-bound", type=float, default=1.0, show_default=True,
              help="Disturbance bound D.")
@click.option("--t-min-mode", type=click.Choice(["approx", "exact"]), default=None)
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="JSON path [outdir/design.json].")
@click.option("--outdir", type=click.Path(path_type=Path), default=None)
@click.option("--plot", is_flag=True)
@click.option("--config", type=click.Path(exists=True), default=None)
def design(objective, t_max, beat_min, max_order, exclude_low_order, d_bound,
           t_min_mode, out, outdir, plot, config):
    """Solve an absorption or containment query over the resonant family."""
    cfg = _load_config(config)
    t_min_mode = _setting(t_min_mode, cfg, "t_min_mode", "approx")
    try:
        query = design_mod.DesignQuery(
            objective=objective, t_max=t_max, beat_min=beat_min,
            max_order=max_order, exclude_low_order=exclude_low_order,
            d_bound=d_bound, t_min_mode=t_min_mode,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    outcome = design_mod.solve(query)

    results = {
        "feasible": outcome.feasible,
        "rationale": outcome.rationale,
        "chosen": None,
        "frontier": [_pareto_point_dict(p) for p in outcome.frontier],
    }
    if outcome.chosen is not None:
        r_scaled, h_min = design_mod.scale_disturbance(outcome.chosen, query.d_bound)
        chosen = _pareto_point_dict(outcome.chosen)
        chosen["r_res_at_d"] = r_scaled
        chosen["h_q_min_at_d"] = h_min
        results["chosen"] = chosen

    inputs = {
        "objective": objective,
        "t_max": t_max,
        "beat_min": beat_min,
        "max_order": max_order,
        "exclude_low_order": exclude_low_order,
        "d_bound": d_bound,
        "t_min_mode": t_min_mode,
    }
    out = out if out is not None else _outdir(outdir, cfg) / "design.json"
    doc = ReportDocument("design", inputs, "analytic", results)
    if plot:
        from . import figures

        fig_path = out.with_suffix(".png")
        figures.save_pareto_figure(fig_path, outcome.frontier, outcome.chosen)
        results["figure"] = str(fig_path)
    _emit(doc, out)


@cli.command()
@click.option("--max-order", type=int, default=30, show_default=True)
@click.option("--grid-points", type=int, default=None, help="Oracle grid size [20000].")
@click.option("--tol", type=float, default=None,
              help="Allowed |r_exact - r_oracle| [1e-6].")
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="CSV path [outdir/verify.csv].")
@click.option("--outdir", type=click.Path(path_type=Path), default=None)
@click.option("--config", type=click.Path(exists=True), default=None)
@click.pass_context
def verify(ctx, max_order, grid_points, tol, out, outdir, config):
    """Compare the exact inscribed radius against the dense oracle, pair by pair."""
    cfg = _load_config(config)
    tol = _setting(tol, cfg, "tol", 1e-6)
    grid_points = _setting(grid_points, cfg, "grid_points", 20000)
    try:
        ocfg = oracle.OracleConfig(grid_points=grid_points)
        pairs = resonance.enumerate_pairs(max_order, 1.0)
    except ValueError as exc:
        raise click.UsageError(str(exc))

    rows = []
    failures = 0
    max_diff = 0.0
    for pr in pairs:
        param = inscribed.resonant_param(pr, 1.0)
        exact = inscribed.inscribed_radius_exact(param).r_res
        dense, _ = oracle.min_radius_dense(param, ocfg)
        diff = abs(exact - dense)
        max_diff = max(max_diff, diff)
        passed = diff <= tol
        failures += 0 if passed else 1
        rows.append(
            [pr.tau, pr.sigma, resonance.is_degenerate(pr), exact, dense, diff, passed]
        )

    out = out if out is not None else _outdir(outdir, cfg) / "verify.csv"
    _must_write(
        write_csv,
        out,
        ["tau", "sigma", "degenerate", "r_exact", "r_oracle", "abs_diff", "passed"],
        rows,
    )
    inputs = {"max_order": max_order, "grid_points": grid_points, "tol": tol}
    results = {
        "pairs": len(rows),
        "failures": failures,
        "max_abs_diff": max_diff,
        "passed": failures == 0,
        "csv": str(out),
    }
    _emit(ReportDocument("verify", inputs, "both", results), None)
    if failures:
        ctx.exit(1)


def main():
    cli()


if __name__ == "__main__":
    main()
