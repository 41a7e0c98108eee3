"""Resonant inscribed radius: degeneracy, exact lobe minimization, asymptotics.

At a resonant pair (tau, sigma) the projected motion closes, and rescaling
time by alpha = 1/sqrt(tau*sigma) turns the (q, q') projection into a
Lissajous curve driven by integer harmonics of the phase theta = alpha * t:

    q(theta)  = rho0 (sin tau*theta + sin sigma*theta)
    q'(theta) = rho0 (sqrt(tau/sigma) cos tau*theta
                      + sqrt(sigma/tau) cos sigma*theta)

The inscribed radius is the minimum of r(theta) = sqrt(q^2 + q'^2) over one
period.  Writing q = 2 rho0 sin(a theta/2) cos(b theta/2) with a = tau+sigma,
b = tau-sigma splits the curve into lobes between consecutive zeros of q;
each lobe holds exactly one zero of q', and the global minimum of r is the
smallest |q| over those critical phases.  Two arithmetic facts shape the
computation:

  * r vanishes identically (at theta = pi/2 mod pi) iff b = 2 (mod 4); such
    degenerate pairs short-circuit to an exact zero.
  * near the first slow-mode node theta = pi/b the critical phase admits a
    first-order proxy built from the scalar equation u + tan u = s, with a
    uniform error bound pi^3 b^2 / a^3 that certifies the bisection result.

The reported minimizing phase theta_min is that certified critical phase
(the one the proxy and its error bound speak about), while r_res is the
minimum over every lobe in the period.  The two can disagree about location:
for some pairs with b >= 4 a later slow node aligns better with the fast
mode and attains a strictly smaller |q| than the first one.  r_res always
reports the global value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .resonance import ResonantPair, coupling_from_pair, is_degenerate

ROOT_TOL = 1e-13          # bisection interval width in theta
PROBE_PER_PERIOD = 64     # sign-probe resolution, scaled by pair order
DEDUP_TOL = 1e-12         # lobe boundary deduplication


class DegeneratePairError(ValueError):
    """Operation undefined for pairs with tau - sigma = 2 (mod 4)."""


class LobeStructureError(RuntimeError):
    """q' did not show exactly one sign change inside a lobe.

    For a valid non-degenerate pair this cannot happen; it usually means a
    degenerate pair was routed into the root finder.
    """


@dataclass(frozen=True)
class ResonantParam:
    """Resonant parametrization: pair, time scale alpha, and amplitude rho0."""

    pair: ResonantPair
    alpha_scale: float
    rho0: float


@dataclass(frozen=True)
class AsymptoticFrame:
    """Slow-mode reduction bookkeeping for the critical-phase proxy.

    x = b/a is the small parameter; k indexes the fast-mode node nearest the
    first slow-mode node; mu is the slow-phase lag between them and s = mu/x
    the same lag seen by the fast phase.
    """

    a: int
    b: int
    x: float
    k: int
    mu: float
    s: float


@dataclass(frozen=True)
class InscribedReport:
    """Inscribed-radius result with certification data and beat times.

    r_res is the global minimum radius over one period; theta_min is the
    certified critical phase near the first slow-mode node (pi/2 for
    degenerate pairs), with theta_asy its proxy and error_bound the certified
    bracket |theta_min - theta_asy|.  Beat times: t_min_approx = pi / |n|,
    t_min_exact = sqrt(tau sigma) * theta_min.
    """

    degenerate: bool
    r_res: float
    theta_min: float
    theta_asy: float | None
    error_bound: float | None
    t_min_exact: float
    t_min_approx: float
    h_q_min: float


def resonant_param(pair: ResonantPair, qdot0: float = 1.0) -> ResonantParam:
    """Build the resonant parametrization for an impulse of size qdot0."""
    if not math.isfinite(qdot0):
        raise ValueError(f"qdot0 must be finite, got {qdot0}")
    n = coupling_from_pair(pair)
    rho0 = qdot0 / math.sqrt(n * n + 4.0)
    return ResonantParam(pair=pair, alpha_scale=1.0 / math.sqrt(pair.tau * pair.sigma), rho0=rho0)


def q_of_theta(param: ResonantParam, theta):
    """(q, q') of the resonant parametrization; accepts scalars or arrays."""
    tau, sigma = param.pair.tau, param.pair.sigma
    w1 = math.sqrt(tau / sigma)
    q = param.rho0 * (np.sin(tau * theta) + np.sin(sigma * theta))
    qdot = param.rho0 * (w1 * np.cos(tau * theta) + np.cos(sigma * theta) / w1)
    return q, qdot


def lobe_boundaries(pair: ResonantPair) -> np.ndarray:
    """All zeros of q(theta) in [0, 2 pi), sorted and deduplicated.

    From q = 2 rho0 sin(a theta/2) cos(b theta/2) the zeros are the union of
    2 pi j / a and pi (1 + 2m) / b; the families can only collide for pairs
    with both integers odd, hence the tolerance-based deduplication.
    """
    a, b = pair.order, pair.delta
    roots = [2.0 * math.pi * j / a for j in range(a)]
    roots += [math.pi * (1 + 2 * m) / b for m in range(b)]
    roots.sort()
    kept = [roots[0]]
    for r in roots[1:]:
        if r - kept[-1] > DEDUP_TOL:
            kept.append(r)
    return np.asarray(kept)


def _qdot_sign_profile(pair: ResonantPair, lo: float, hi: float):
    """Probe q' on a grid over [lo, hi] fine enough for the fastest harmonic."""
    tau, sigma = pair.tau, pair.sigma
    w1 = math.sqrt(tau / sigma)
    count = max(16, int(math.ceil(PROBE_PER_PERIOD * pair.order * (hi - lo) / (2.0 * math.pi))) + 1)
    grid = np.linspace(lo, hi, count)
    vals = w1 * np.cos(tau * grid) + np.cos(sigma * grid) / w1
    return grid, vals


def _bisect_qdot(pair: ResonantPair, a: float, b: float) -> float:
    """Bisect q' to ROOT_TOL inside a bracket with a sign change.

    The amplitude rho0 scales q' uniformly, so the root does not depend on
    it; bisection runs on the unit-amplitude profile.
    """
    tau, sigma = pair.tau, pair.sigma
    w1 = math.sqrt(tau / sigma)

    def qdot(theta: float) -> float:
        return w1 * math.cos(tau * theta) + math.cos(sigma * theta) / w1

    fa = qdot(a)
    while b - a > ROOT_TOL:
        mid = 0.5 * (a + b)
        fm = qdot(mid)
        if fm == 0.0:
            return mid
        if (fa < 0.0) != (fm < 0.0):
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def _qdot_brackets(pair: ResonantPair, lo: float, hi: float) -> list[tuple[float, float]]:
    grid, vals = _qdot_sign_profile(pair, lo, hi)
    flips = np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]
    return [(float(grid[i]), float(grid[i + 1])) for i in flips]


def _qdot_root(pair: ResonantPair, lo: float, hi: float) -> float:
    """The unique zero of q' inside (lo, hi), by sign-bracketed bisection."""
    brackets = _qdot_brackets(pair, lo, hi)
    if len(brackets) == 0:
        raise LobeStructureError(
            f"no sign change of q' in ({lo:.6g}, {hi:.6g}) of {pair}; "
            "is the pair degenerate?"
        )
    if len(brackets) > 1:
        raise LobeStructureError(
            f"{len(brackets)} sign changes of q' in ({lo:.6g}, {hi:.6g}) of {pair}"
        )
    return _bisect_qdot(pair, *brackets[0])


def critical_phase_in_lobe(param: ResonantParam, lobe: tuple[float, float]) -> float:
    """The unique zero of q' inside an open lobe of the Lissajous curve."""
    return _qdot_root(param.pair, lobe[0], lobe[1])


def _lobes(pair: ResonantPair) -> list[tuple[float, float]]:
    bounds = lobe_boundaries(pair)
    closed = np.append(bounds, 2.0 * math.pi)
    return list(zip(closed[:-1], closed[1:]))


def asymptotic_phase(pair: ResonantPair) -> tuple[float, float, AsymptoticFrame]:
    """First-order proxy for the critical phase near the first slow-mode node.

    Solves u + tan u = s on (-pi/2, pi/2) (strictly increasing, so plain
    bisection) and reconstructs theta_asy = pi/b + (2/a)(u - s).
    """
    if is_degenerate(pair):
        raise DegeneratePairError(
            f"{pair} is degenerate (delta = 2 mod 4); the minimum is 0 at pi/2"
        )
    a, b = pair.order, pair.delta
    x = b / a
    # round half away from zero, kept exact in integer arithmetic
    k = (a + b) // (2 * b)
    mu = math.pi / 2.0 - k * math.pi * x
    s = mu / x

    lo, hi = -math.pi / 2.0 + 1e-12, math.pi / 2.0 - 1e-12
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if mid + math.tan(mid) < s:
            lo = mid
        else:
            hi = mid
    u_asy = 0.5 * (lo + hi)
    theta_asy = math.pi / b + (2.0 / a) * (u_asy - s)
    return theta_asy, u_asy, AsymptoticFrame(a=a, b=b, x=x, k=k, mu=mu, s=s)


def certified_phase(pair: ResonantPair) -> float:
    """The exact critical phase the asymptotic proxy approximates.

    Bisection of q' over the fast half-period centered on node k, i.e.
    theta in (2/a)(k pi - pi/2), (2/a)(k pi + pi/2)); the proxy's error
    bound certifies |certified_phase - theta_asy| <= pi^3 b^2 / a^3.  The
    root is unique there except for very low orders, where b/a is not small
    and the slow-mode reduction blurs; then the root nearest the proxy is
    the certified one.
    """
    theta_asy, _, frame = asymptotic_phase(pair)
    a, k = frame.a, frame.k
    lo = (2.0 / a) * (k * math.pi - math.pi / 2.0)
    hi = (2.0 / a) * (k * math.pi + math.pi / 2.0)
    brackets = _qdot_brackets(pair, lo, hi)
    if len(brackets) == 0:
        raise LobeStructureError(
            f"no sign change of q' in the certified window of {pair}"
        )
    roots = [_bisect_qdot(pair, *br) for br in brackets]
    return min(roots, key=lambda r: abs(r - theta_asy))


def error_bound(pair: ResonantPair) -> float:
    """Uniform certification radius: |theta_c - theta_asy| <= pi^3 b^2 / a^3."""
    a, b = pair.order, pair.delta
    return math.pi**3 * b * b / a**3


def beat_time(pair: ResonantPair, theta_min: float) -> tuple[float, float]:
    """(approximate, exact) first time of minimal subsystem energy.

    approx = pi / |n| = pi sqrt(tau sigma) / (tau - sigma); exact converts the
    minimizing phase back to time, t = sqrt(tau sigma) * theta_min.
    """
    root = math.sqrt(pair.tau * pair.sigma)
    return math.pi * root / pair.delta, root * theta_min


def inscribed_radius_exact(param: ResonantParam) -> InscribedReport:
    """Exact inscribed radius by evaluating q at every lobe's critical phase.

    Degenerate pairs short-circuit to an exact zero at theta = pi/2.  For the
    rest, r_res is the minimum of |q| over the critical phases of every lobe
    in one period (a superset of the envelope-minimizing lobes, so it attains
    the global minimum), while theta_min is the certified critical phase near
    the first slow-mode node, the one theta_asy and error_bound refer to.
    """
    pair = param.pair
    if is_degenerate(pair):
        theta_min = math.pi / 2.0
        approx, exact = beat_time(pair, theta_min)
        return InscribedReport(
            degenerate=True, r_res=0.0, theta_min=theta_min,
            theta_asy=None, error_bound=None,
            t_min_exact=exact, t_min_approx=approx, h_q_min=0.0,
        )

    r_res = math.inf
    for lobe in _lobes(pair):
        theta_c = critical_phase_in_lobe(param, lobe)
        r_res = min(r_res, abs(float(q_of_theta(param, theta_c)[0])))

    theta_min = certified_phase(pair)
    theta_asy, _, _ = asymptotic_phase(pair)
    approx, exact = beat_time(pair, theta_min)
    return InscribedReport(
        degenerate=False, r_res=r_res, theta_min=theta_min,
        theta_asy=theta_asy, error_bound=error_bound(pair),
        t_min_exact=exact, t_min_approx=approx,
        h_q_min=0.5 * r_res * r_res,
    )
