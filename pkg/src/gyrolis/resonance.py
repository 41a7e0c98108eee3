"""Integer arithmetic of resonant pairs.

A coprime pair (tau, sigma) with tau > sigma >= 1 fixes the ratio of the two
modal frequencies of the gyroscopically coupled system and hence the coupling
strength n = (tau - sigma) / sqrt(tau * sigma).  Everything here is exact
integer bookkeeping plus that one square root: coprimality checks, conversion
between n and the pair, the degeneracy congruence delta = tau - sigma = 2
(mod 4), order classification, and enumeration under a beat-quality filter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class NotCoprimeError(ValueError):
    """The two integers share a common factor and cannot form a resonant pair."""


class PairOrderingError(ValueError):
    """tau > sigma >= 1 is violated."""


@dataclass(frozen=True)
class ResonantPair:
    """Coprime (tau, sigma) with tau > sigma; the arithmetic identity of a resonance."""

    tau: int
    sigma: int

    @property
    def delta(self) -> int:
        return self.tau - self.sigma

    @property
    def order(self) -> int:
        return self.tau + self.sigma

    @property
    def beat_ratio(self) -> float:
        """Slow-to-fast period ratio (tau + sigma) / (tau - sigma)."""
        return (self.tau + self.sigma) / (self.tau - self.sigma)

    def __str__(self) -> str:
        return f"({self.tau},{self.sigma})"


@dataclass(frozen=True)
class ResonanceClass:
    """Order classification of a single pair against a low-order threshold M.

    kind is "low_order" when tau + sigma <= M.  Everything else is reported as
    "generic" together with its order and coupling magnitude: high-order
    resonance is a property of pair sequences (order -> infinity, |n| -> 0),
    so a lone pair can only be judged by the caller from those numbers.
    """

    kind: str
    m_threshold: int
    order: int
    coupling: float


def make_pair(tau: int, sigma: int) -> ResonantPair:
    """Validate and build a resonant pair.

    Raises NotCoprimeError when gcd(tau, sigma) != 1 and PairOrderingError
    when tau > sigma >= 1 fails.
    """
    if tau < 1 or sigma < 1:
        raise PairOrderingError(f"tau and sigma must be >= 1, got ({tau}, {sigma})")
    if tau <= sigma:
        raise PairOrderingError(f"tau must exceed sigma, got ({tau}, {sigma})")
    if math.gcd(tau, sigma) != 1:
        raise NotCoprimeError(
            f"({tau}, {sigma}) is not coprime (gcd = {math.gcd(tau, sigma)})"
        )
    return ResonantPair(tau, sigma)


def coupling_from_pair(pair: ResonantPair) -> float:
    """Coupling strength n > 0 realizing the pair: n = (tau - sigma)/sqrt(tau*sigma).

    This is the positive root; -n realizes the same pair with the modal roles
    swapped.
    """
    return pair.delta / math.sqrt(pair.tau * pair.sigma)


def is_degenerate(pair: ResonantPair) -> bool:
    """True when the inscribed radius vanishes: tau - sigma = 2 (mod 4)."""
    return pair.delta % 4 == 2


def classify(pair: ResonantPair, m_threshold: int) -> ResonanceClass:
    """Classify a pair as low_order (order <= M) or generic."""
    if m_threshold < 3:
        raise ValueError(f"m_threshold must be >= 3, got {m_threshold}")
    kind = "low_order" if pair.order <= m_threshold else "generic"
    return ResonanceClass(kind, m_threshold, pair.order, coupling_from_pair(pair))


def _modal_ratio(n: float) -> float:
    # Omega1/Omega2 = (sqrt(n^2+4) + |n|) / (sqrt(n^2+4) - |n|) >= 1
    s = math.sqrt(n * n + 4.0)
    return (s + abs(n)) / (s - abs(n))


def _convergents(value: float, max_terms: int = 40):
    """Continued-fraction convergents p/q of a positive real, ascending q."""
    h_prev, h = 1, int(math.floor(value))
    k_prev, k = 0, 1
    x = value
    yield Fraction(h, k)
    for _ in range(max_terms):
        frac = x - math.floor(x)
        if frac < 1e-15:
            return
        x = 1.0 / frac
        a = int(math.floor(x))
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        yield Fraction(h, k)


def _pairs_of_order(order: int):
    # ascending delta within one order: sigma descends from floor((order-1)/2)
    for sigma in range((order - 1) // 2, 0, -1):
        tau = order - sigma
        if math.gcd(tau, sigma) == 1:
            yield ResonantPair(tau, sigma)


def pair_from_coupling(
    n: float, tol: float = 1e-9, max_order: int = 100
) -> ResonantPair | None:
    """Smallest-order coprime pair whose coupling matches |n| within tol.

    Candidate orders are capped first by a continued-fraction convergent of
    the exact modal ratio (fast path), then the winner is confirmed by an
    exhaustive scan in (order, delta) lexicographic order, which guarantees
    the smallest-order, then smallest-delta, qualifying pair.  Returns None
    when nothing with tau + sigma <= max_order qualifies (in particular for
    n = 0, where tau = sigma is excluded by definition).
    """
    if not math.isfinite(n):
        raise ValueError(f"coupling must be finite, got {n}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_order < 3:
        raise ValueError(f"max_order must be >= 3, got {max_order}")

    target = abs(n)
    scan_limit = max_order
    if target > 0:
        for conv in _convergents(_modal_ratio(target)):
            tau, sigma = conv.numerator, conv.denominator
            if tau + sigma > max_order:
                break
            if tau > sigma >= 1:
                cand = ResonantPair(tau, sigma)
                if abs(coupling_from_pair(cand) - target) <= tol:
                    scan_limit = tau + sigma
                    break

    for order in range(3, scan_limit + 1):
        for pair in _pairs_of_order(order):
            if abs(coupling_from_pair(pair) - target) <= tol:
                return pair
    return None


def enumerate_pairs(max_order: int, beat_min: float = 1.0) -> list[ResonantPair]:
    """All coprime pairs with tau + sigma <= max_order passing the beat filter.

    The beat filter keeps pairs with (tau + sigma)/(tau - sigma) >= beat_min,
    i.e. at least beat_min fast cycles per slow envelope half-period.  Output
    is sorted by (order, delta).
    """
    if max_order < 3:
        raise ValueError(f"max_order must be >= 3, got {max_order}")
    if beat_min < 1:
        raise ValueError(f"beat_min must be >= 1, got {beat_min}")
    out = []
    for order in range(3, max_order + 1):
        for pair in _pairs_of_order(order):
            if pair.order >= beat_min * pair.delta:
                out.append(pair)
    return out
