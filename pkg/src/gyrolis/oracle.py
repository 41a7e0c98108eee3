"""Independent brute-force checks for the analytic results.

Nothing here reuses the analytic shortcuts it is meant to certify: the
inscribed radius is re-derived by dense sampling of the closed form plus a
golden-section polish, trajectories are re-derived by fixed-step classical
4th-order integration of the differential equations, and envelope
containment is re-checked against the raw support inequalities.  A
disagreement therefore isolates a logic error rather than shared numerics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import ModalSystem, StateSample
from .envelope import EnvelopeCurve
from .inscribed import ResonantParam, q_of_theta

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class EnergyDriftError(RuntimeError):
    """Integrator energy drift exceeded tolerance; reduce the step size."""

    def __init__(self, drift: float, tol: float):
        super().__init__(f"relative energy drift {drift:.3e} exceeds {tol:.3e}")
        self.drift = drift


@dataclass(frozen=True)
class OracleConfig:
    grid_points: int = 20000       # theta samples per period
    horizon_periods: float = 100.0  # beat periods for non-resonant sweeps
    integrator_dt: float = 1e-3
    energy_tol: float = 1e-6

    def __post_init__(self):
        if self.grid_points < 10_000:
            raise ValueError(f"grid_points must be >= 10000, got {self.grid_points}")
        if self.integrator_dt <= 0:
            raise ValueError(f"integrator_dt must be positive, got {self.integrator_dt}")
        if self.horizon_periods <= 0:
            raise ValueError(f"horizon_periods must be positive, got {self.horizon_periods}")
        if self.energy_tol <= 0:
            raise ValueError(f"energy_tol must be positive, got {self.energy_tol}")


def _golden_minimize(f, a: float, b: float, tol: float = 1e-10) -> float:
    """Golden-section argmin of f on [a, b] (unimodal there)."""
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def min_radius_dense(param: ResonantParam, cfg: OracleConfig | None = None) -> tuple[float, float]:
    """(r_min, theta_at_min) from a dense theta grid plus local refinement.

    The grid pins the global minimum to within one cell (the fastest harmonic
    is resolved thousands of times over); golden-section polish on the
    bracketing cells then drives the argmin to 1e-10 in theta.
    """
    cfg = cfg or OracleConfig()
    theta = np.linspace(0.0, 2.0 * math.pi, cfg.grid_points, endpoint=False)
    q, qdot = q_of_theta(param, theta)
    r_sq = q * q + qdot * qdot
    i = int(np.argmin(r_sq))
    h = 2.0 * math.pi / cfg.grid_points

    def f(t: float) -> float:
        qq, qd = q_of_theta(param, t)
        return float(qq * qq + qd * qd)

    t_best = _golden_minimize(f, theta[i] - h, theta[i] + h)
    return math.sqrt(f(t_best)), t_best


def min_radius_sweep(
    system: ModalSystem, qdot0: float, cfg: OracleConfig | None = None
) -> tuple[float, float]:
    """Uncertified minimum radius for arbitrary coupling by dense time sampling.

    Covers horizon_periods beat periods (pi/|n| each; one modal period when
    n = 0).  Without resonance the projected set is dense in the envelope, so
    this only ever upper-bounds the infimum; resonant couplings should use
    min_radius_dense on the exact parametrization instead.
    """
    cfg = cfg or OracleConfig()
    beat = math.pi / abs(system.n) if system.n != 0.0 else 2.0 * math.pi
    t_end = cfg.horizon_periods * beat
    # same per-period resolution as the theta grid, capped to keep sweeps bounded
    count = min(int(cfg.grid_points * cfg.horizon_periods), 20_000_000)
    t = np.linspace(0.0, t_end, count)
    rho0 = qdot0 / (system.omega1 + system.omega2)
    q = rho0 * (np.sin(system.omega1 * t) + np.sin(system.omega2 * t))
    qdot = rho0 * (
        system.omega1 * np.cos(system.omega1 * t)
        + system.omega2 * np.cos(system.omega2 * t)
    )
    r_sq = q * q + qdot * qdot
    i = int(np.argmin(r_sq))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, count - 1)]

    def f(tt: float) -> float:
        qq = rho0 * (math.sin(system.omega1 * tt) + math.sin(system.omega2 * tt))
        qd = rho0 * (
            system.omega1 * math.cos(system.omega1 * tt)
            + system.omega2 * math.cos(system.omega2 * tt)
        )
        return qq * qq + qd * qd

    t_best = _golden_minimize(f, lo, hi)
    return math.sqrt(f(t_best)), t_best


def integrate(
    n: float,
    qdot0: float,
    t_end: float,
    dt: float,
    energy_tol: float = 1e-6,
) -> list[StateSample]:
    """Classical RK4 integration of q'' + n z' + q = 0, z'' - n q' + z = 0.

    Fixed step for reproducibility; samples land on the same grid as
    dynamics.sample_trace.  Energy drift is measured a posteriori against
    H(0) = qdot0^2 / 2 and raises EnergyDriftError when it exceeds
    energy_tol (relative).
    """
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")

    def rhs(q, z, qd, zd):
        return qd, zd, -q - n * zd, -z + n * qd

    def sample(t, q, z, qd, zd):
        hq = 0.5 * (q * q + qd * qd)
        hz = 0.5 * (z * z + zd * zd)
        return StateSample(t=t, q=q, qdot=qd, z=z, zdot=zd, hq=hq, hz=hz, h=hq + hz)

    steps = int(math.floor(t_end / dt + 1e-9))
    q, z, qd, zd = 0.0, 0.0, qdot0, 0.0
    out = [sample(0.0, q, z, qd, zd)]
    for i in range(steps):
        a1, b1, c1, d1 = rhs(q, z, qd, zd)
        a2, b2, c2, d2 = rhs(
            q + 0.5 * dt * a1, z + 0.5 * dt * b1, qd + 0.5 * dt * c1, zd + 0.5 * dt * d1
        )
        a3, b3, c3, d3 = rhs(
            q + 0.5 * dt * a2, z + 0.5 * dt * b2, qd + 0.5 * dt * c2, zd + 0.5 * dt * d2
        )
        a4, b4, c4, d4 = rhs(q + dt * a3, z + dt * b3, qd + dt * c3, zd + dt * d3)
        q += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        z += dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        qd += dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        zd += dt / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
        out.append(sample((i + 1) * dt, q, z, qd, zd))

    h0 = 0.5 * qdot0 * qdot0
    if h0 > 0.0:
        drift = max(abs(s.h - h0) for s in out) / h0
        if drift > energy_tol:
            raise EnergyDriftError(drift, energy_tol)
    return out


def hull_check(
    trace: list[StateSample], curve: EnvelopeCurve, slack_rel: float = 1e-8
) -> bool:
    """True iff every (q, qdot) sample satisfies all support inequalities.

    Checks dot(point, u(phi)) <= h(phi) + slack_rel * |qdot0| for every
    sampled direction of the envelope, in chunks to bound memory.
    """
    if len(curve.phi) < 256:
        raise ValueError(f"envelope must be sampled with >= 256 directions, got {len(curve.phi)}")
    c, s = np.cos(curve.phi), np.sin(curve.phi)
    h = curve.rho0 * (
        np.sqrt(c * c + curve.omega1**2 * s * s)
        + np.sqrt(c * c + curve.omega2**2 * s * s)
    )
    u = np.stack([c, s], axis=0)  # (2, m)
    slack = slack_rel * abs(curve.qdot0)
    pts = np.array([(s.q, s.qdot) for s in trace])
    for start in range(0, len(pts), 8192):
        chunk = pts[start : start + 8192]
        if np.any(chunk @ u > h + slack):
            return False
    return True
