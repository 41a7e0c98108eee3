import math

import pytest

from gyrolis.design import DesignQuery, pareto_frontier, scale_disturbance, solve
from gyrolis.inscribed import beat_time, inscribed_radius_exact, resonant_param
from gyrolis.oracle import min_radius_dense
from gyrolis.resonance import enumerate_pairs, is_degenerate, make_pair


def brute_force_scores(max_order, beat_min, t_min_mode="approx"):
    scores = {}
    for pair in enumerate_pairs(max_order, beat_min):
        report = inscribed_radius_exact(resonant_param(pair, 1.0))
        t = report.t_min_approx if t_min_mode == "approx" else report.t_min_exact
        scores[(pair.tau, pair.sigma)] = (report.r_res, t)
    return scores


def test_query_validation():
    with pytest.raises(ValueError):
        DesignQuery(objective="defend", t_max=10.0)
    with pytest.raises(ValueError):
        DesignQuery(objective="absorb", t_max=0.0)
    with pytest.raises(ValueError):
        DesignQuery(objective="absorb", t_max=10.0, beat_min=0.0)
    with pytest.raises(ValueError):
        DesignQuery(objective="absorb", t_max=10.0, max_order=2)
    with pytest.raises(ValueError):
        DesignQuery(objective="absorb", t_max=10.0, t_min_mode="fast")


def test_frontier_dominance_matches_brute_force():
    points = pareto_frontier(20, 1.0)
    scores = [(p.r_res_unit, p.t_min) for p in points]
    for i, p in enumerate(points):
        ri, ti = scores[i]
        expected = any(
            rj <= ri and tj <= ti and (rj < ri or tj < ti)
            for j, (rj, tj) in enumerate(scores)
            if j != i
        )
        assert p.dominated == expected
    ts = [p.t_min for p in points]
    assert ts == sorted(ts)


def test_frontier_contains_degenerate_zero_radius():
    points = pareto_frontier(40, 1.0)
    frontier = [p for p in points if not p.dominated]
    assert min(p.r_res_unit for p in frontier) == 0.0
    assert all(is_degenerate(p.pair) for p in frontier if p.r_res_unit == 0.0)


def test_tradeoff_along_unit_delta_family():
    # deeper exchange (smaller r_res) costs a longer beat along delta = 1
    points = {
        (p.pair.tau, p.pair.sigma): p for p in pareto_frontier(26, 1.0)
    }
    family = [points[(t, t - 1)] for t in range(2, 13)]
    radii = [p.r_res_unit for p in family]
    times = [p.t_min for p in family]
    assert all(a > b for a, b in zip(radii, radii[1:]))
    assert all(a < b for a, b in zip(times, times[1:]))


def test_smallest_delta_has_largest_radius_within_order_band():
    by_order = {}
    for p in pareto_frontier(13, 1.0):
        by_order.setdefault(p.pair.order, []).append(p)
    for group in by_order.values():
        best_r = max(p.r_res_unit for p in group)
        min_delta_point = min(group, key=lambda p: p.pair.delta)
        assert min_delta_point.r_res_unit == best_r


def test_absorb_query_selects_case_a_pair():
    outcome = solve(DesignQuery(objective="absorb", t_max=16.0, beat_min=10.0, max_order=25))
    assert outcome.feasible
    chosen = outcome.chosen
    assert (chosen.pair.tau, chosen.pair.sigma) == (11, 9)
    assert chosen.n == pytest.approx(0.201, abs=5e-4)
    assert chosen.r_res_unit == 0.0
    assert chosen.t_min == pytest.approx(15.6, abs=0.1)
    assert "t_min" in outcome.rationale


def test_contain_query_selects_case_b_pair():
    outcome = solve(DesignQuery(objective="contain", t_max=18.0, beat_min=10.0, max_order=25))
    assert outcome.feasible
    chosen = outcome.chosen
    assert (chosen.pair.tau, chosen.pair.sigma) == (6, 5)
    assert chosen.n == pytest.approx(0.1826, abs=5e-4)
    assert chosen.r_res_unit == pytest.approx(5.075e-2, abs=1e-3)
    assert chosen.t_min == pytest.approx(17.2, abs=0.1)


def test_solve_matches_exhaustive_scan():
    scores = brute_force_scores(25, 10.0)
    feasible_abs = {k: v for k, v in scores.items() if v[1] <= 16.0}
    assert feasible_abs
    best_absorb = min(feasible_abs.values())[0]
    out = solve(DesignQuery(objective="absorb", t_max=16.0, beat_min=10.0, max_order=25))
    assert out.chosen.r_res_unit == best_absorb

    feasible_con = {k: v for k, v in scores.items() if v[1] <= 18.0}
    best_contain = max(v[0] for v in feasible_con.values())
    out = solve(DesignQuery(objective="contain", t_max=18.0, beat_min=10.0, max_order=25))
    assert out.chosen.r_res_unit == best_contain


def test_chosen_point_satisfies_constraints_post_hoc():
    for objective, t_max in (("absorb", 16.0), ("contain", 18.0)):
        out = solve(DesignQuery(objective=objective, t_max=t_max, beat_min=10.0, max_order=30))
        p = out.chosen
        assert p.t_min <= t_max
        assert p.pair.order >= 10.0 * p.pair.delta
        # t_min consistent with the pair's own beat time
        assert p.t_min == pytest.approx(beat_time(p.pair, 0.0)[0], abs=1e-12)


def test_forced_wide_delta_is_dominated():
    # every delta = 6 candidate passing the beat filter is slower than (11, 9)
    # at the same zero radius, so widening delta only hurts
    family = [p for p in enumerate_pairs(80, 10.0) if p.delta == 6]
    assert make_pair(41, 35) in family
    assert beat_time(make_pair(41, 35), 0.0)[0] == pytest.approx(19.8, abs=0.1)
    points = {(p.pair.tau, p.pair.sigma): p for p in pareto_frontier(80, 10.0)}
    for p in family:
        assert is_degenerate(p)
        assert points[(p.tau, p.sigma)].dominated
    assert not points[(11, 9)].dominated


def test_scale_disturbance():
    points = {(p.pair.tau, p.pair.sigma): p for p in pareto_frontier(12, 1.0)}
    p65 = points[(6, 5)]
    r1, h1 = scale_disturbance(p65, 1.0)
    assert r1 == p65.r_res_unit
    assert h1 == pytest.approx(0.5 * r1 * r1, abs=1e-18)
    r2, _ = scale_disturbance(p65, 2.0)
    assert r2 == pytest.approx(0.1015, abs=2e-3)
    # oracle cross-check at the scaled disturbance
    dense, _ = min_radius_dense(resonant_param(make_pair(6, 5), 2.0))
    assert r2 == pytest.approx(dense, abs=1e-6)
    assert scale_disturbance(p65, 0.0) == (0.0, 0.0)


def test_outcome_invariant_under_disturbance_scaling():
    base = solve(DesignQuery(objective="contain", t_max=18.0, beat_min=10.0, max_order=25))
    for d in (0.5, 2.0, 10.0):
        scaled = solve(
            DesignQuery(objective="contain", t_max=18.0, beat_min=10.0, max_order=25, d_bound=d)
        )
        assert scaled.chosen.pair == base.chosen.pair


def test_infeasible_outcomes_name_binding_constraint():
    out = solve(DesignQuery(objective="absorb", t_max=10.0, beat_min=30.0, max_order=25))
    assert not out.feasible and out.chosen is None
    assert "beat" in out.rationale

    out = solve(DesignQuery(objective="absorb", t_max=1.0, beat_min=10.0, max_order=25))
    assert not out.feasible
    assert "t_max" in out.rationale

    out = solve(
        DesignQuery(objective="absorb", t_max=16.0, beat_min=10.0, max_order=25,
                    exclude_low_order=25)
    )
    assert not out.feasible
    assert "low-order" in out.rationale


def test_low_order_exclusion_changes_choice():
    # excluding orders <= 20 removes (11,9); the absorb optimum moves
    out = solve(
        DesignQuery(objective="absorb", t_max=40.0, beat_min=10.0, max_order=30,
                    exclude_low_order=20)
    )
    assert out.feasible
    assert out.chosen.pair.order > 20
