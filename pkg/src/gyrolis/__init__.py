"""Analysis and design of gyroscopic interconnections for two coupled oscillators.

The library computes the exact modal structure and impulse response of a
conservative 2-DOF system with skew velocity coupling, the convex envelope
of its phase-plane projection, the resonant inscribed radius (with the
degeneracy criterion and certified asymptotics), and solves absorption /
containment design queries over the coprime resonance family.
"""

from .design import DesignOutcome, DesignQuery, ParetoPoint, pareto_frontier, scale_disturbance, solve
from .dynamics import (
    ImpulseTrajectory,
    ModalSystem,
    StateSample,
    impulse_trajectory,
    modal_system,
    sample_trace,
    state_at,
)
from .envelope import EnvelopeCurve, boundary_point, sample_envelope, support
from .inscribed import (
    AsymptoticFrame,
    InscribedReport,
    ResonantParam,
    asymptotic_phase,
    beat_time,
    certified_phase,
    critical_phase_in_lobe,
    error_bound,
    inscribed_radius_exact,
    lobe_boundaries,
    q_of_theta,
    resonant_param,
)
from .oracle import OracleConfig, hull_check, integrate, min_radius_dense, min_radius_sweep
from .resonance import (
    NotCoprimeError,
    PairOrderingError,
    ResonanceClass,
    ResonantPair,
    classify,
    coupling_from_pair,
    enumerate_pairs,
    is_degenerate,
    make_pair,
    pair_from_coupling,
)

__version__ = "0.1.0"
