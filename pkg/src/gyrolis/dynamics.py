"""Closed-form impulse response of the gyroscopically coupled pair.

The model is the conservative two-DOF system

    q'' + n z' + q = 0,      z'' - n q' + z = 0,

whose total energy H = (q^2 + q'^2 + z^2 + z'^2)/2 is conserved: the skew
velocity coupling only routes energy between the (q, q') and (z, z')
subsystems.  The two positive modal frequencies are

    Omega1 = (sqrt(n^2 + 4) + n)/2,   Omega2 = (sqrt(n^2 + 4) - n)/2,

with Omega1 * Omega2 = 1.  For the impulse start (q, q', z, z')(0) =
(0, qdot0, 0, 0) the solution is an explicit superposition of the two modes
with common amplitude rho0 = qdot0 / sqrt(n^2 + 4):

    q(t)  = rho0 (sin Omega1 t + sin Omega2 t)
    z(t)  = rho0 (cos Omega2 t - cos Omega1 t)
    q'(t) = rho0 (Omega1 cos Omega1 t + Omega2 cos Omega2 t)
    z'(t) = rho0 (Omega1 sin Omega1 t - Omega2 sin Omega2 t)

Everything in this module evaluates these closed forms; no integration
happens here (the oracle module integrates the ODE independently to certify
them).  Energies are always recomputed from coordinates, never accumulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ModalSystem:
    """Coupling strength n and the modal frequencies it induces."""

    n: float
    omega1: float
    omega2: float


@dataclass(frozen=True)
class ImpulseTrajectory:
    """One impulse response: the system plus the realized initial velocity."""

    system: ModalSystem
    qdot0: float
    rho0: float


@dataclass(frozen=True)
class StateSample:
    """Full state and energy split at one instant."""

    t: float
    q: float
    qdot: float
    z: float
    zdot: float
    hq: float
    hz: float
    h: float


def modal_system(n: float) -> ModalSystem:
    """Build the modal frequencies for coupling n (n may be zero or negative)."""
    if not math.isfinite(n):
        raise ValueError(f"coupling must be finite, got {n}")
    s = math.sqrt(n * n + 4.0)
    return ModalSystem(n=n, omega1=(s + n) / 2.0, omega2=(s - n) / 2.0)


def impulse_trajectory(system: ModalSystem, qdot0: float) -> ImpulseTrajectory:
    """Impulse response amplitude: rho0 = qdot0 / sqrt(n^2 + 4) = qdot0/(Omega1+Omega2)."""
    if not math.isfinite(qdot0):
        raise ValueError(f"qdot0 must be finite, got {qdot0}")
    rho0 = qdot0 / math.sqrt(system.n * system.n + 4.0)
    return ImpulseTrajectory(system=system, qdot0=qdot0, rho0=rho0)


def _coordinates(traj: ImpulseTrajectory, t):
    """Closed-form (q, qdot, z, zdot) at time(s) t; works on scalars and arrays."""
    w1, w2 = traj.system.omega1, traj.system.omega2
    r = traj.rho0
    s1, c1 = np.sin(w1 * t), np.cos(w1 * t)
    s2, c2 = np.sin(w2 * t), np.cos(w2 * t)
    q = r * (s1 + s2)
    qdot = r * (w1 * c1 + w2 * c2)
    z = r * (c2 - c1)
    zdot = r * (w1 * s1 - w2 * s2)
    return q, qdot, z, zdot


def state_at(traj: ImpulseTrajectory, t: float) -> StateSample:
    """Evaluate the closed form at time t, with subsystem and total energies."""
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    q, qdot, z, zdot = _coordinates(traj, float(t))
    hq = 0.5 * (q * q + qdot * qdot)
    hz = 0.5 * (z * z + zdot * zdot)
    return StateSample(
        t=float(t), q=float(q), qdot=float(qdot), z=float(z), zdot=float(zdot),
        hq=float(hq), hz=float(hz), h=float(hq + hz),
    )


def sample_trace(
    traj: ImpulseTrajectory, t_end: float, dt: float
) -> list[StateSample]:
    """Sample the closed form at t = 0, dt, 2 dt, ... <= t_end."""
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    # small slack so t_end lands on the grid despite rounding
    count = int(math.floor(t_end / dt + 1e-9)) + 1
    t = np.arange(count) * dt
    q, qdot, z, zdot = _coordinates(traj, t)
    hq = 0.5 * (q * q + qdot * qdot)
    hz = 0.5 * (z * z + zdot * zdot)
    h = hq + hz
    return [
        StateSample(*(float(col[i]) for col in (t, q, qdot, z, zdot, hq, hz, h)))
        for i in range(count)
    ]
