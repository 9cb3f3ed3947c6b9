"""Order-statistic union bound and the threshold sequences it is applied to."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import CriticalSequence, GammaLike, as_values, m_array, parse_gamma


@dataclass(frozen=True, eq=False)
class BetaSequence:
    """Thresholds 0 <= beta_1 <= ... <= beta_m <= 1 for the m smallest of t p-values."""

    betas: np.ndarray
    t: int

    def __post_init__(self):
        b = np.array(self.betas, dtype=float)
        if b.ndim != 1:
            raise ValueError("betas must be 1-d")
        if b.size > self.t:
            raise ValueError(f"m = {b.size} exceeds t = {self.t}")
        if b.size and (b[0] < 0.0 or b[-1] > 1.0):
            raise ValueError("betas must lie in [0, 1]")
        if np.any(np.diff(b) < 0.0):
            raise ValueError("betas must be nondecreasing")
        b.setflags(write=False)
        object.__setattr__(self, "betas", b)

    @property
    def m(self) -> int:
        return self.betas.size

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.betas, prepend=0.0)

    @property
    def sharp(self) -> bool:
        """The bound is attainable only when it does not exceed 1."""
        return lemma32_bound(self) <= 1.0


def lemma32_bound(bs: BetaSequence) -> float:
    """t * sum_i (beta_i - beta_{i-1}) / i, uncapped.

    Upper bound on P{p_(i) <= beta_i for some i} for any t valid p-values.
    """
    if bs.m == 0:
        return 0.0
    i = np.arange(1, bs.m + 1)
    return float(bs.t * np.sum(bs.increments / i))


def kfwer_beta_sequence(k: int, s: int, card_i: int, crit: CriticalSequence) -> BetaSequence:
    """Thresholds of the k-FWER union: q_(j) <= alpha_{s-|I|+j} for k <= j <= |I|."""
    if not 1 <= k <= card_i <= s:
        raise ValueError(f"need 1 <= k <= |I| <= s, got k={k}, |I|={card_i}, s={s}")
    a = as_values(crit)
    if a.size != s:
        raise ValueError("critical sequence length must equal s")
    betas = np.zeros(card_i)
    betas[k - 1 :] = a[s - card_i + k - 1 :]
    return BetaSequence(betas, card_i)


def fdp_terms(gamma: GammaLike, s: int, card_i: int) -> tuple[np.ndarray, np.ndarray]:
    """Qualifying terms of the FDP union for |I| = card_i.

    Returns (threshold index s-|I|+k, order statistic k v m(s-|I|+k)) for every
    admissible k, in increasing k. Both columns are nondecreasing.
    """
    g = parse_gamma(gamma)
    if not 1 <= card_i <= s:
        raise ValueError(f"need 1 <= |I| <= s, got |I|={card_i}, s={s}")
    idx = np.arange(1, s + 1)
    m = m_array(g, s)
    k = idx - (s - card_i)
    keep = card_i >= m
    return idx[keep], np.maximum(k, m)[keep]


def fdp_beta_sequence(gamma: GammaLike, s: int, card_i: int, crit: CriticalSequence) -> BetaSequence:
    """Per-order-statistic envelope of the FDP union.

    Several k can land on one order statistic; the union then only depends on
    the largest threshold among them. Order statistics hit by no k inherit the
    previous threshold, which adds nothing to the bound.
    """
    a = as_values(crit)
    if a.size != s:
        raise ValueError("critical sequence length must equal s")
    idx, ell = fdp_terms(gamma, s, card_i)
    betas = np.zeros(card_i)
    np.maximum.at(betas, ell - 1, a[idx - 1])
    betas = np.maximum.accumulate(betas)
    return BetaSequence(betas, card_i)
