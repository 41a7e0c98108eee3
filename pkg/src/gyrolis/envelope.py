"""Exact convex envelope of the projected (q, q') set via support functions.

The impulse response projects onto the (q, q') plane as a sum of two modal
ellipse curves with semi-axes (1, Omega1) and (1, Omega2), both scaled by
rho0.  The convex hull of that set is the Minkowski sum of the filled
ellipses, and support functions add under Minkowski sums:

    h(phi) = rho0 ( sqrt(cos^2 phi + Omega1^2 sin^2 phi)
                  + sqrt(cos^2 phi + Omega2^2 sin^2 phi) ).

The boundary is strictly convex and smooth, so each direction phi exposes a
unique point, the sum of the two normalized support gradients.  At phi =
pi/2 the support equals |qdot0| (the energy bound, attained at t = 0); the
curve is an ellipse only in the uncoupled case n = 0, where it degenerates
to the circle of radius |qdot0|.

The (z, z') projection has the same envelope: the closed form swaps the
modal roles without changing the two radii involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ModalSystem


@dataclass(frozen=True)
class EnvelopeCurve:
    """Sampled boundary of the convex envelope, ordered by direction angle."""

    phi: np.ndarray      # directions in [0, 2 pi), shape (count,)
    points: np.ndarray   # boundary points (q, qdot), shape (count, 2)
    rho0: float
    omega1: float
    omega2: float

    @property
    def qdot0(self) -> float:
        return self.rho0 * (self.omega1 + self.omega2)


def support(system: ModalSystem, rho0: float, phi):
    """Support value of the envelope in direction (cos phi, sin phi)."""
    c, s = np.cos(phi), np.sin(phi)
    c2, s2 = c * c, s * s
    g1 = np.sqrt(c2 + (system.omega1 * system.omega1) * s2)
    g2 = np.sqrt(c2 + (system.omega2 * system.omega2) * s2)
    return rho0 * (g1 + g2)


def boundary_point(system: ModalSystem, rho0: float, phi):
    """Exposed boundary point in direction phi; (2,) for scalars, (n, 2) for arrays.

    Lies on its supporting line: dot(point, (cos phi, sin phi)) = support(phi).
    """
    c, s = np.cos(phi), np.sin(phi)
    w1sq = system.omega1 * system.omega1
    w2sq = system.omega2 * system.omega2
    g1 = np.sqrt(c * c + w1sq * s * s)
    g2 = np.sqrt(c * c + w2sq * s * s)
    x = rho0 * (c / g1 + c / g2)
    y = rho0 * (w1sq * s / g1 + w2sq * s / g2)
    return np.stack(np.broadcast_arrays(x, y), axis=-1)


def sample_envelope(system: ModalSystem, qdot0: float, count: int = 512) -> EnvelopeCurve:
    """Sample the envelope at count uniform directions in [0, 2 pi).

    The projected set is point-symmetric, so only |qdot0| matters: a negative
    impulse traces the mirrored curve inside the same hull.
    """
    if count < 8:
        raise ValueError(f"count must be >= 8, got {count}")
    rho0 = abs(qdot0) / (system.omega1 + system.omega2)
    phi = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    return EnvelopeCurve(
        phi=phi,
        points=boundary_point(system, rho0, phi),
        rho0=rho0,
        omega1=system.omega1,
        omega2=system.omega2,
    )
