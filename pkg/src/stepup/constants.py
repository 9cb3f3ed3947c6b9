"""Normalizing constants D1 (k-FWER) and D2 (FDP) and the critical values they induce.

Every S value is evaluated by the same private helper whether it is asked for
directly or as part of a D scan, so a report's entries are bit-identical to
individual s1/s2 calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metrics import KFWER, ErrorMetric, FDPTail
from .sequences import CriticalSequence, GammaLike, as_values, m_array, parse_gamma


@dataclass(frozen=True, eq=False)
class NormalizationReport:
    metric: ErrorMetric
    s: int
    card_i: np.ndarray
    values: np.ndarray
    D: float
    argmax_card_i: int

    @property
    def per_card_i(self) -> list[tuple[int, float]]:
        return list(zip(self.card_i.tolist(), self.values.tolist()))


def _check_seq(seq, s: int) -> np.ndarray:
    a = as_values(seq)
    if a.size != s:
        raise ValueError(f"critical sequence has length {a.size}, expected s={s}")
    return a


def _s1(a: np.ndarray, delta: np.ndarray, k: int, s: int, card: int) -> float:
    base = s - card
    j = np.arange(k + 1, card + 1)
    tail = np.sum(delta[base + k - 1 : s - 1] / j) if j.size else 0.0
    return float(card * a[base + k - 1] / k + card * tail)


def _s2(a: np.ndarray, delta: np.ndarray, m: np.ndarray, s: int, card: int) -> float:
    # threshold indices 2..s; m(idx) is nondecreasing so the filter keeps a prefix
    base = s - card
    m_idx = m[1:]
    keep = card >= m_idx
    idx = np.arange(2, s + 1)[keep]
    denom = np.maximum(idx - base, m_idx[keep])
    tail = np.sum(delta[keep] / denom) if idx.size else 0.0
    return float(card * a[0] + card * tail)


def s1(k: int, s: int, card_i: int, seq: CriticalSequence) -> float:
    """Bound on the k-FWER when card_i hypotheses are true (before normalization)."""
    if not 1 <= k <= card_i <= s:
        raise ValueError(f"need 1 <= k <= |I| <= s, got k={k}, |I|={card_i}, s={s}")
    a = _check_seq(seq, s)
    return _s1(a, np.diff(a), k, s, card_i)


def d1(k: int, s: int, seq: CriticalSequence) -> NormalizationReport:
    """max of s1 over k <= |I| <= s; ties go to the smallest |I|."""
    if not 1 <= k <= s:
        raise ValueError(f"need 1 <= k <= s, got k={k}, s={s}")
    a = _check_seq(seq, s)
    delta = np.diff(a)
    cards = np.arange(k, s + 1)
    vals = np.array([_s1(a, delta, k, s, int(c)) for c in cards])
    best = int(np.argmax(vals))
    return NormalizationReport(KFWER(k), s, cards, vals, float(vals[best]), int(cards[best]))


def s2(gamma: GammaLike, s: int, card_i: int, seq: CriticalSequence) -> float:
    """Bound on P{FDP > gamma} when card_i hypotheses are true (before normalization)."""
    g = parse_gamma(gamma)
    if not 1 <= card_i <= s:
        raise ValueError(f"need 1 <= |I| <= s, got |I|={card_i}, s={s}")
    a = _check_seq(seq, s)
    return _s2(a, np.diff(a), m_array(g, s), s, card_i)


def d2(gamma: GammaLike, s: int, seq: CriticalSequence) -> NormalizationReport:
    g = parse_gamma(gamma)
    if s < 1:
        raise ValueError("s must be >= 1")
    a = _check_seq(seq, s)
    delta = np.diff(a)
    m = m_array(g, s)
    cards = np.arange(1, s + 1)
    vals = np.array([_s2(a, delta, m, s, int(c)) for c in cards])
    best = int(np.argmax(vals))
    return NormalizationReport(FDPTail(g), s, cards, vals, float(vals[best]), int(cards[best]))


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def kfwer_stepup_values(k: int, s: int, alpha: float, seq: CriticalSequence) -> CriticalSequence:
    """alpha * alpha_i / D1(k, s): stepup critical values with k-FWER <= alpha."""
    _check_alpha(alpha)
    a = _check_seq(seq, s)
    return CriticalSequence(alpha * a / d1(k, s, seq).D)


def fdp_stepup_values(gamma: GammaLike, s: int, alpha: float, seq: CriticalSequence) -> CriticalSequence:
    """alpha * alpha_i / D2(gamma, s): stepup critical values with P{FDP > gamma} <= alpha."""
    _check_alpha(alpha)
    a = _check_seq(seq, s)
    return CriticalSequence(alpha * a / d2(gamma, s, seq).D)


def weak_control_factor(k: int, s: int) -> float:
    """Attainable k-FWER / alpha when all s hypotheses are true and the k-FWER
    template is used unnormalized in a stepup procedure."""
    if not 1 <= k <= s:
        raise ValueError(f"need 1 <= k <= s, got k={k}, s={s}")
    i = np.arange(k, s, dtype=float)
    terms = (i - k) / ((s + k - i) * i * (i + 1.0))
    return 2.0 - k / s + k * math.fsum(terms.tolist())


def strong_control_factor_exact(k: int, s: int, card_i: int) -> float:
    """Same quantity as weak_control_factor but with card_i < s true hypotheses.

    Uses the closed form of the template increments, k / ((|I|+k-j)(|I|+k-j+1)),
    so it does not go through s1; the two must agree.
    """
    if not 1 <= k <= card_i <= s:
        raise ValueError(f"need 1 <= k <= |I| <= s, got k={k}, |I|={card_i}, s={s}")
    j = np.arange(k + 1, card_i + 1, dtype=float)
    r = card_i + k - j
    terms = k / (j * r * (r + 1.0))
    return 1.0 + card_i * math.fsum(terms.tolist())

