"""Stepup and stepdown decision rules, comparator constants, and FDP bookkeeping."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .constants import _check_alpha
from .sequences import CriticalSequence, GammaLike, as_values, harmonic, parse_gamma, template_kfwer


@dataclass(frozen=True, eq=False)
class PValueVector:
    ids: tuple
    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        ids = tuple(self.ids)
        if p.ndim != 1:
            raise ValueError("p-values must form a 1-d vector")
        if len(ids) != p.size:
            raise ValueError("need exactly one id per p-value")
        if len(set(ids)) != len(ids):
            raise ValueError("hypothesis ids must be unique")
        if np.any(np.isnan(p)) or np.any(p < 0.0) or np.any(p > 1.0):
            raise ValueError("p-values must lie in [0, 1]")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "ids", ids)

    @classmethod
    def from_values(cls, p: Iterable[float], ids: Sequence[Hashable] | None = None) -> "PValueVector":
        p = list(p)
        if ids is None:
            ids = [str(i) for i in range(1, len(p) + 1)]
        return cls(tuple(ids), np.asarray(p, dtype=float))

    @classmethod
    def from_mapping(cls, pairs: Mapping[Hashable, float]) -> "PValueVector":
        return cls(tuple(pairs.keys()), np.asarray(list(pairs.values()), dtype=float))

    def __len__(self) -> int:
        return self.p.size


@dataclass(frozen=True)
class RankedDecision:
    id: Hashable
    p: float
    rank: int
    rejected: bool


@dataclass(frozen=True)
class RejectionOutcome:
    num_rejected: int
    rejected_ids: frozenset
    sorted_pairs: tuple = field(repr=False)

    @property
    def s(self) -> int:
        return len(self.sorted_pairs)

    @property
    def ids(self) -> frozenset:
        return frozenset(d.id for d in self.sorted_pairs)


@dataclass(frozen=True)
class TruthMask:
    """Ids of the hypotheses that are actually true nulls."""

    true_ids: frozenset

    def __init__(self, true_ids: Iterable[Hashable]):
        object.__setattr__(self, "true_ids", frozenset(true_ids))


def stepup_count(p_sorted: np.ndarray, crit: np.ndarray) -> np.ndarray:
    """Number of stepup rejections for each row of ascending-sorted p-values.

    The largest i with p_(i) <= alpha_i, or 0 if there is none.
    """
    hit = p_sorted <= crit
    s = hit.shape[-1]
    last = s - np.argmax(hit[..., ::-1], axis=-1)
    return np.where(hit.any(axis=-1), last, 0)


def stepdown_count(p_sorted: np.ndarray, crit: np.ndarray) -> np.ndarray:
    """Length of the leading run of p_(i) <= alpha_i in each row."""
    miss = p_sorted > crit
    s = miss.shape[-1]
    return np.where(miss.any(axis=-1), np.argmax(miss, axis=-1), s)


ENGINES = {"stepup": stepup_count, "stepdown": stepdown_count}


def _apply(pvals: PValueVector, crit, engine: str) -> RejectionOutcome:
    c = as_values(crit)
    if c.size != len(pvals):
        raise ValueError(f"{len(pvals)} p-values but {c.size} critical values")
    order = np.argsort(pvals.p, kind="stable")
    p_sorted = pvals.p[order]
    r = int(ENGINES[engine](p_sorted, c))
    pairs = tuple(
        RankedDecision(pvals.ids[j], float(p_sorted[rank]), rank + 1, rank < r)
        for rank, j in enumerate(order)
    )
    return RejectionOutcome(r, frozenset(d.id for d in pairs[:r]), pairs)


def stepup(pvals: PValueVector, crit: CriticalSequence) -> RejectionOutcome:
    """Reject the r most significant hypotheses, r the largest i with p_(i) <= alpha_i."""
    return _apply(pvals, crit, "stepup")


def stepdown(pvals: PValueVector, crit: CriticalSequence) -> RejectionOutcome:
    """Reject while p_(1) <= alpha_1, p_(2) <= alpha_2, ... holds."""
    return _apply(pvals, crit, "stepdown")


def holm_values(s: int, alpha: float) -> CriticalSequence:
    """alpha / (s - i + 1); meant for the stepdown engine."""
    _check_alpha(alpha)
    return template_kfwer(1, s).scaled(alpha)


def hochberg_values(s: int, alpha: float) -> CriticalSequence:
    """Holm's constants used with the stepup engine. Valid under independence only."""
    return holm_values(s, alpha)


def bh_values(s: int, q: float) -> CriticalSequence:
    """i q / s. Controls the FDR only under independence; kept as a comparator."""
    _check_alpha(q)
    return CriticalSequence(q * np.arange(1, s + 1) / s)


def by_fdr_values(s: int, q: float) -> CriticalSequence:
    """Benjamini-Yekutieli: i q / (s C_s), FDR <= q under any dependence."""
    _check_alpha(q)
    if s < 1:
        raise ValueError("s must be >= 1")
    return CriticalSequence(q * np.arange(1, s + 1) / (s * harmonic(s)))


def by_derived_fdp_values(s: int, gamma: GammaLike, alpha: float) -> CriticalSequence:
    """BY constants at FDR level gamma*alpha, which by Markov's inequality
    give P{FDP > gamma} <= alpha.

    The linear template is read as alpha * i, not alpha_i: only then is the
    ratio to the linear-template FDP constants free of i.
    """
    g = parse_gamma(gamma)
    if g == 0:
        raise ValueError("gamma must be positive")
    _check_alpha(alpha)
    return CriticalSequence(float(g) * alpha * np.arange(1, s + 1) / (s * harmonic(s)))


def fdr_median_comparators(s: int, gamma: GammaLike) -> CriticalSequence:
    """BY constants at FDR level gamma."""
    g = parse_gamma(gamma)
    if g == 0:
        raise ValueError("gamma must be positive")
    return by_fdr_values(s, float(g))


def _rejected_true(outcome: RejectionOutcome, truth: TruthMask) -> int:
    unknown = truth.true_ids - outcome.ids
    if unknown:
        raise ValueError(f"truth mask names unknown hypotheses: {sorted(map(str, unknown))}")
    return len(outcome.rejected_ids & truth.true_ids)


def count_false_rejections(outcome: RejectionOutcome, truth: TruthMask) -> int:
    return _rejected_true(outcome, truth)


def compute_fdp(outcome: RejectionOutcome, truth: TruthMask) -> float:
    """False rejections over total rejections; 0 with no rejections."""
    v = _rejected_true(outcome, truth)
    return v / outcome.num_rejected if outcome.num_rejected else 0.0


def fdp_fdr_conversion(expected_fdp: float, gamma: float) -> tuple[float, float]:
    """Bounds on P{FDP > gamma} implied by E(FDP) alone."""
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie strictly between 0 and 1")
    if not 0 <= expected_fdp <= 1:
        raise ValueError("E(FDP) must lie in [0, 1]")
    lower = max(0.0, (expected_fdp - gamma) / (1 - gamma))
    upper = min(1.0, expected_fdp / gamma)
    return lower, upper


def fdr_bound_from_fdp(gamma: float, alpha: float) -> float:
    """FDR level implied by P{FDP > gamma} <= alpha."""
    return gamma * (1 - alpha) + alpha


def by_counterexample_fwer_bound(s: int, alpha: float) -> float:
    """Lower bound on the FWER of BY stepup constants when s/2 + 1 hypotheses are
    true with i.i.d. uniform p-values and the rest have p = 0."""
    if s < 2 or s % 2:
        raise ValueError("s must be a positive even number")
    return -math.expm1((s // 2 + 1) * math.log1p(-alpha / (2 * harmonic(s))))
