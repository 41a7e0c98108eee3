"""Interconnection-shaping searches over the resonant pair family.

The tunable knob is the coupling strength n, but the inscribed-radius metric
is defined at resonances, so the search space is the enumerated coprime
family up to a maximum order, filtered by the beat-quality requirement
(order / delta >= beat_min).  Each pair is scored by its unit-disturbance
inscribed radius and its beat time; disturbance size D only scales the
radius (linearity), so it never changes which pair wins.

Two objectives share the constraint t_min <= t_max:

  * absorb  - minimize r_res * D (deep energy extraction; degenerate pairs
              reach exactly zero),
  * contain - maximize r_res * D (guaranteed retained energy).

Ties break toward smaller t_min, then smaller order, then smaller delta.
An empty feasible set yields an explicit infeasible outcome naming the
binding constraint rather than an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .inscribed import inscribed_radius_exact, resonant_param
from .resonance import ResonantPair, coupling_from_pair, enumerate_pairs


@dataclass(frozen=True)
class DesignQuery:
    objective: str                        # "absorb" or "contain"
    t_max: float
    beat_min: float = 10.0
    max_order: int = 40
    exclude_low_order: int | None = None  # drop pairs with order <= this
    d_bound: float = 1.0
    t_min_mode: str = "approx"            # "approx" (pi/|n|) or "exact"

    def __post_init__(self):
        if self.objective not in ("absorb", "contain"):
            raise ValueError(f"objective must be absorb or contain, got {self.objective!r}")
        if self.t_max <= 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        if self.beat_min < 1:
            raise ValueError(f"beat_min must be >= 1, got {self.beat_min}")
        if self.max_order < 3:
            raise ValueError(f"max_order must be >= 3, got {self.max_order}")
        if self.t_min_mode not in ("approx", "exact"):
            raise ValueError(f"t_min_mode must be approx or exact, got {self.t_min_mode!r}")


@dataclass(frozen=True)
class ParetoPoint:
    pair: ResonantPair
    n: float
    r_res_unit: float   # inscribed radius at unit disturbance
    t_min: float        # per the query's t_min_mode
    dominated: bool


@dataclass(frozen=True)
class DesignOutcome:
    chosen: ParetoPoint | None
    frontier: list[ParetoPoint] = field(default_factory=list)
    feasible: bool = False
    rationale: str = ""


def _score_pairs(pairs: list[ResonantPair], t_min_mode: str) -> list[ParetoPoint]:
    scored = []
    for pair in pairs:
        report = inscribed_radius_exact(resonant_param(pair, 1.0))
        t_min = report.t_min_approx if t_min_mode == "approx" else report.t_min_exact
        scored.append(
            ParetoPoint(
                pair=pair,
                n=coupling_from_pair(pair),
                r_res_unit=report.r_res,
                t_min=t_min,
                dominated=False,
            )
        )
    return scored


def _flag_dominated(points: list[ParetoPoint]) -> list[ParetoPoint]:
    # dominated on (r_res_unit, t_min), both minimized, one strict
    out = []
    for p in points:
        dominated = any(
            q.r_res_unit <= p.r_res_unit
            and q.t_min <= p.t_min
            and (q.r_res_unit < p.r_res_unit or q.t_min < p.t_min)
            for q in points
        )
        out.append(ParetoPoint(p.pair, p.n, p.r_res_unit, p.t_min, dominated))
    return out


def pareto_frontier(
    max_order: int, beat_min: float = 1.0, t_min_mode: str = "approx"
) -> list[ParetoPoint]:
    """Score every enumerated pair and flag dominance; sorted by t_min.

    Points with the dominated flag cleared form the Pareto frontier of the
    (r_res, t_min) trade-off; dominated points are kept so the whole cloud
    can be plotted or re-checked.
    """
    if t_min_mode not in ("approx", "exact"):
        raise ValueError(f"t_min_mode must be approx or exact, got {t_min_mode!r}")
    scored = _score_pairs(enumerate_pairs(max_order, beat_min), t_min_mode)
    flagged = _flag_dominated(scored)
    return sorted(flagged, key=lambda p: (p.t_min, p.r_res_unit, p.pair.order, p.pair.delta))


def solve(query: DesignQuery) -> DesignOutcome:
    """Pick the constrained optimum pair for an absorption or containment query."""
    family = enumerate_pairs(query.max_order, query.beat_min)
    if not family:
        return DesignOutcome(
            chosen=None, frontier=[], feasible=False,
            rationale=(
                f"infeasible: no coprime pair with order <= {query.max_order} "
                f"meets the beat requirement (order/delta >= {query.beat_min:g})"
            ),
        )
    if query.exclude_low_order is not None:
        family = [p for p in family if p.order > query.exclude_low_order]
        if not family:
            return DesignOutcome(
                chosen=None, frontier=[], feasible=False,
                rationale=(
                    f"infeasible: the low-order exclusion (order <= "
                    f"{query.exclude_low_order}) removed every candidate"
                ),
            )

    scored = _flag_dominated(_score_pairs(family, query.t_min_mode))
    scored.sort(key=lambda p: (p.t_min, p.r_res_unit, p.pair.order, p.pair.delta))
    frontier = [p for p in scored if not p.dominated]

    feasible = [p for p in scored if p.t_min <= query.t_max]
    if not feasible:
        fastest = min(scored, key=lambda p: p.t_min)
        return DesignOutcome(
            chosen=None, frontier=frontier, feasible=False,
            rationale=(
                f"infeasible: t_max = {query.t_max:g} excludes every pair; "
                f"fastest candidate is {fastest.pair} with t_min = {fastest.t_min:.4g}"
            ),
        )

    sign = 1.0 if query.objective == "absorb" else -1.0
    chosen = min(
        feasible,
        key=lambda p: (sign * p.r_res_unit, p.t_min, p.pair.order, p.pair.delta),
    )
    verb = "minimized" if query.objective == "absorb" else "maximized"
    plural = "pair" if len(feasible) == 1 else "pairs"
    rationale = (
        f"{verb} r_res * D over {len(feasible)} feasible {plural} "
        f"(beat >= {query.beat_min:g}, t_min[{query.t_min_mode}] <= {query.t_max:g}"
        + (
            f", order > {query.exclude_low_order}"
            if query.exclude_low_order is not None
            else ""
        )
        + f"); chosen {chosen.pair} with n = {chosen.n:.4g}, "
        f"r_res = {chosen.r_res_unit * query.d_bound:.4g} at D = {query.d_bound:g}, "
        f"t_min = {chosen.t_min:.4g}"
    )
    return DesignOutcome(chosen=chosen, frontier=frontier, feasible=True, rationale=rationale)


def scale_disturbance(point: ParetoPoint, qdot0: float) -> tuple[float, float]:
    """(r_res, h_q_min) at disturbance qdot0: the radius scales linearly."""
    if not math.isfinite(qdot0):
        raise ValueError(f"qdot0 must be finite, got {qdot0}")
    r = abs(qdot0) * point.r_res_unit
    return r, 0.5 * r * r
