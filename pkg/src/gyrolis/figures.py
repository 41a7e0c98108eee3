"""Matplotlib rendering of the report data (phase portraits, energy, Pareto).

Figures are always written to files next to the delimited output; no
interactive backend is ever needed, so Agg is forced before pyplot loads.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .design import ParetoPoint
from .dynamics import StateSample
from .envelope import EnvelopeCurve


def _circle(radius: float, count: int = 256):
    ang = np.linspace(0.0, 2.0 * math.pi, count)
    return radius * np.cos(ang), radius * np.sin(ang)


def _draw_phase_plane(ax, samples, curve, inscribed_r):
    q = np.array([s.q for s in samples])
    qdot = np.array([s.qdot for s in samples])
    ax.plot(q, qdot, lw=0.4, color="C0", label="trajectory")
    qdot0 = samples[0].qdot
    cx, cy = _circle(abs(qdot0))
    ax.plot(cx, cy, ls=":", color="k", lw=1.0, label="maximal radius")
    if curve is not None:
        closed = np.vstack([curve.points, curve.points[:1]])
        ax.plot(closed[:, 0], closed[:, 1], color="r", lw=1.2, label="envelope")
    if inscribed_r is not None:
        if inscribed_r > 0:
            ix, iy = _circle(inscribed_r)
            ax.plot(ix, iy, color="g", lw=1.2, label="inscribed circle")
        else:
            ax.plot(0.0, 0.0, "g+", ms=10, label="inscribed circle (degenerate)")
    ax.set_xlabel("q")
    ax.set_ylabel("dq/dt")
    ax.set_aspect("equal")
    ax.legend(fontsize=7, loc="upper right")


def save_trace_figure(
    path: Path,
    samples: list[StateSample],
    curve: EnvelopeCurve | None = None,
    inscribed_r: float | None = None,
    t_min: float | None = None,
) -> None:
    """Phase portrait plus subsystem energy history, optionally annotated."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 4.2))
    _draw_phase_plane(ax1, samples, curve, inscribed_r)
    t = np.array([s.t for s in samples])
    hq = np.array([s.hq for s in samples])
    ax2.plot(t, hq, lw=0.6, color="C0")
    if t_min is not None and t_min <= t[-1]:
        ax2.axvline(t_min, color="r", ls="--", lw=1.0, label=f"t_min = {t_min:.3g}")
        ax2.legend(fontsize=7)
    ax2.set_xlabel("t")
    ax2.set_ylabel("H_q")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_envelope_figure(path: Path, curve: EnvelopeCurve) -> None:
    """Envelope boundary with the maximal-radius circle."""
    fig, ax = plt.subplots(figsize=(4.6, 4.4))
    closed = np.vstack([curve.points, curve.points[:1]])
    ax.plot(closed[:, 0], closed[:, 1], color="r", lw=1.2, label="envelope")
    cx, cy = _circle(abs(curve.qdot0))
    ax.plot(cx, cy, ls=":", color="k", lw=1.0, label="maximal radius")
    ax.set_xlabel("q")
    ax.set_ylabel("dq/dt")
    ax.set_aspect("equal")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_pareto_figure(
    path: Path, points: list[ParetoPoint], chosen: ParetoPoint | None = None
) -> None:
    """Trade-off cloud in (log(1 + t_min), r_res) with the frontier in red."""
    fig, ax = plt.subplots(figsize=(5.4, 4.2))
    dom = [p for p in points if p.dominated]
    front = sorted((p for p in points if not p.dominated), key=lambda p: p.t_min)
    if dom:
        ax.scatter(
            [math.log1p(p.t_min) for p in dom],
            [p.r_res_unit for p in dom],
            s=12, color="0.6", label="dominated",
        )
    if front:
        ax.plot(
            [math.log1p(p.t_min) for p in front],
            [p.r_res_unit for p in front],
            "o-", color="r", ms=4, lw=1.0, label="Pareto frontier",
        )
    if chosen is not None:
        ax.scatter(
            [math.log1p(chosen.t_min)], [chosen.r_res_unit],
            marker="*", s=140, color="g", zorder=5,
            label=f"chosen {chosen.pair}",
        )
    ax.set_xlabel("log(1 + t_min)")
    ax.set_ylabel("r_res at unit disturbance")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
