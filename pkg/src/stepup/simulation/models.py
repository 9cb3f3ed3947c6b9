"""Joint p-value models, including the worst-case constructions behind the
sharpness results.

Every model turns a matrix of uniforms (one row per replication, ``width``
columns) into a matrix of p-values (one row per replication, ``s`` columns).
Hypothesis j has id ``str(j + 1)``; ``truth`` flags the true nulls.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from ..bounds import BetaSequence, fdp_beta_sequence, fdp_terms, kfwer_beta_sequence, lemma32_bound
from ..constants import d1, d2
from ..procedures import PValueVector, TruthMask
from ..sequences import CriticalSequence, GammaLike, as_values, parse_gamma

# slack for the bound landing a few ulps above 1 when it is exactly 1 in theory
_SHARP_TOL = 1e-12


class SharpnessInfeasible(ValueError):
    """The union bound exceeds 1, so no distribution attains it."""


class JointModel:
    s: int
    truth: np.ndarray
    width: int

    def draw(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def ids(self) -> tuple:
        return tuple(str(j) for j in range(1, self.s + 1))

    def truth_mask(self) -> TruthMask:
        return TruthMask(i for i, t in zip(self.ids, self.truth) if t)

    def sample(self, rng: np.random.Generator) -> tuple[PValueVector, TruthMask]:
        p = self.draw(rng.random((1, self.width)))[0]
        return PValueVector(self.ids, p), self.truth_mask()


def _draw_lemma32(bs: BetaSequence, u: np.ndarray) -> np.ndarray:
    """Columns: u[:, 0] picks the segment, u[:, 1] the common value, the rest a
    random subset of coordinates."""
    n, t, m = u.shape[0], bs.t, bs.m
    if m == 0:
        return np.ones((n, t))
    probs = t * bs.increments / np.arange(1, m + 1)
    seg = np.searchsorted(np.cumsum(probs), u[:, 0], side="right")
    fired = seg < m
    seg_c = np.minimum(seg, m - 1)
    hi = bs.betas[seg_c]
    lo = hi - bs.increments[seg_c]
    value = hi - u[:, 1] * (hi - lo)
    size = np.where(fired, seg_c + 1, 0)
    ranks = np.argsort(np.argsort(u[:, 2 : 2 + t], axis=1, kind="stable"), axis=1, kind="stable")
    return np.where(ranks < size[:, None], value[:, None], 1.0)


def lemma32_union_event(q: np.ndarray, bs: BetaSequence) -> np.ndarray:
    """Per row: does q_(i) <= beta_i hold for some i?"""
    if bs.m == 0:
        return np.zeros(q.shape[0], dtype=bool)
    q_sorted = np.sort(q, axis=1)[:, : bs.m]
    return (q_sorted <= bs.betas).any(axis=1)


class Lemma32WorstCase(JointModel):
    """t p-values for which P{union of q_(i) <= beta_i} equals the union bound.

    With probability t (beta_i - beta_{i-1}) / i, exactly i randomly chosen
    coordinates share one value drawn uniformly on (beta_{i-1}, beta_i] and the
    rest are 1. Each coordinate is then uniform below beta_m.
    """

    def __init__(self, bs: BetaSequence):
        bound = lemma32_bound(bs)
        if bound > 1.0 + _SHARP_TOL:
            raise SharpnessInfeasible(f"bound {bound:.6g} exceeds 1; no sharp distribution exists")
        self.bs = bs
        self.bound = bound
        self.s = bs.t
        self.truth = np.ones(bs.t, dtype=bool)
        self.width = bs.t + 2

    def draw(self, u: np.ndarray) -> np.ndarray:
        return _draw_lemma32(self.bs, u)

    def union_event(self, p: np.ndarray) -> np.ndarray:
        return lemma32_union_event(p, self.bs)


FalsePolicy = Union[str, float]


class IndependentUniform(JointModel):
    """True p-values i.i.d. U(0, 1); false ones 0, a fixed value, or also U(0, 1)."""

    def __init__(self, s: int, num_true: int | None = None, false_p: FalsePolicy = "zero"):
        num_true = s if num_true is None else num_true
        if s < 1 or not 0 <= num_true <= s:
            raise ValueError("need s >= 1 and 0 <= num_true <= s")
        if isinstance(false_p, str):
            if false_p not in ("zero", "uniform"):
                raise ValueError("false_p must be 'zero', 'uniform' or a number in [0, 1]")
        elif not 0 <= false_p <= 1:
            raise ValueError("fixed false p-value must lie in [0, 1]")
        self.s = s
        self.num_true = num_true
        self.false_p = false_p
        self.truth = np.arange(s) >= s - num_true
        self.width = s

    def draw(self, u: np.ndarray) -> np.ndarray:
        p = u.copy()
        nf = self.s - self.num_true
        if self.false_p == "zero":
            p[:, :nf] = 0.0
        elif self.false_p != "uniform":
            p[:, :nf] = float(self.false_p)
        return p


def _adversary_crit(template, alpha: float, D: float, inflation: float) -> np.ndarray:
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    if inflation <= 0:
        raise ValueError("inflation must be positive")
    crit = inflation * alpha * as_values(template) / D
    if crit[-1] >= 1.0:
        raise ValueError("inflated critical values must stay below 1")
    return crit


class KfwerAdversary(JointModel):
    """Worst case for a stepup procedure with critical values
    inflation * alpha * template / D1(k, s).

    The |I|* maximizing S1 hypotheses are true and get the sharp union-bound
    distribution; the rest have p = 0. The k-FWER then equals
    inflation * alpha exactly.
    """

    def __init__(self, k: int, s: int, alpha: float, template: CriticalSequence, inflation: float = 1.0):
        report = d1(k, s, template)
        self.k, self.alpha, self.inflation = k, alpha, inflation
        self.report = report
        self.card_i = report.argmax_card_i
        self.critical_values = _adversary_crit(template, alpha, report.D, inflation)
        self.beta_sequence = kfwer_beta_sequence(k, s, self.card_i, self.critical_values)
        self._true = Lemma32WorstCase(self.beta_sequence)
        self.s = s
        self.truth = np.arange(s) >= s - self.card_i
        self.width = self._true.width

    def draw(self, u: np.ndarray) -> np.ndarray:
        p = np.zeros((u.shape[0], self.s))
        p[:, self.s - self.card_i :] = self._true.draw(u)
        return p

    def union_event(self, p: np.ndarray) -> np.ndarray:
        return lemma32_union_event(p[:, self.truth], self.beta_sequence)


class FdpAdversary(JointModel):
    """Worst case for a stepup procedure with critical values
    inflation * alpha * template / D2(gamma, s).

    True p-values follow the sharp distribution for the FDP union at |I|*.
    False p-values are then set from the true ones: take the largest union
    term k that fires, with threshold index j = s - |I|* + k and order
    statistic l = k v m(j). Put j - l false p-values at 0 and the rest at 1.
    The stepup procedure then rejects at least j hypotheses, at most j - l of
    them false, so FDP > gamma. Without a firing term all false p-values are 0.
    """

    def __init__(self, gamma: GammaLike, s: int, alpha: float, template: CriticalSequence, inflation: float = 1.0):
        g = parse_gamma(gamma)
        report = d2(g, s, template)
        self.gamma, self.alpha, self.inflation = g, alpha, inflation
        self.report = report
        self.card_i = report.argmax_card_i
        self.critical_values = _adversary_crit(template, alpha, report.D, inflation)
        self.beta_sequence = fdp_beta_sequence(g, s, self.card_i, self.critical_values)
        self._true = Lemma32WorstCase(self.beta_sequence)
        self.term_index, self.term_order = fdp_terms(g, s, self.card_i)
        self.s = s
        self.num_false = s - self.card_i
        self.truth = np.arange(s) >= self.num_false
        self.width = self._true.width

    def _fired_terms(self, q: np.ndarray) -> np.ndarray:
        q_sorted = np.sort(q, axis=1)
        return q_sorted[:, self.term_order - 1] <= self.critical_values[self.term_index - 1]

    def union_event(self, p: np.ndarray) -> np.ndarray:
        """Does any term of the FDP union fire for the true p-values of each row?"""
        return self._fired_terms(p[:, self.truth]).any(axis=1)

    def draw(self, u: np.ndarray) -> np.ndarray:
        q = self._true.draw(u)
        fired = self._fired_terms(q)
        any_fired = fired.any(axis=1)
        top = fired.shape[1] - 1 - np.argmax(fired[:, ::-1], axis=1)
        zeros = np.where(any_fired, self.term_index[top] - self.term_order[top], self.num_false)
        p = np.empty((u.shape[0], self.s))
        p[:, : self.num_false] = np.where(np.arange(self.num_false) < zeros[:, None], 0.0, 1.0)
        p[:, self.num_false :] = q
        return p


class ByCounterexample(JointModel):
    """s even, s/2 + 1 true hypotheses with i.i.d. U(0, 1) p-values, the rest 0."""

    def __init__(self, s: int, alpha: float = 0.05):
        if s < 2 or s % 2:
            raise ValueError("s must be a positive even number")
        self.s = s
        self.alpha = alpha
        self.card_i = s // 2 + 1
        self.truth = np.arange(s) >= s - self.card_i
        self.width = self.card_i

    def draw(self, u: np.ndarray) -> np.ndarray:
        p = np.zeros((u.shape[0], self.s))
        p[:, self.s - self.card_i :] = u
        return p


def sample_lemma32_worst_case(bs: BetaSequence, rng: np.random.Generator) -> np.ndarray:
    model = Lemma32WorstCase(bs)
    return model.draw(rng.random((1, model.width)))[0]


def sample_kfwer_adversary(k, s, alpha, template, rng, inflation: float = 1.0):
    return KfwerAdversary(k, s, alpha, template, inflation).sample(rng)


def sample_fdp_adversary(gamma, s, alpha, template, rng, inflation: float = 1.0):
    return FdpAdversary(gamma, s, alpha, template, inflation).sample(rng)


def sample_by_counterexample(s, alpha, rng):
    return ByCounterexample(s, alpha).sample(rng)
