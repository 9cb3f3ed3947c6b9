from fractions import Fraction

import numpy as np
import pytest

from stepup.bounds import BetaSequence, fdp_beta_sequence, fdp_terms, kfwer_beta_sequence, lemma32_bound
from stepup.constants import s1, s2
from stepup.sequences import m_of, template_fdp, template_kfwer, template_linear
from stepup.simulation import Lemma32WorstCase, SharpnessInfeasible, lemma32_union_event


def test_bound_by_hand():
    # t=3, betas (0.01, 0.03): 3 * (0.01/1 + 0.02/2) = 0.06
    assert lemma32_bound(BetaSequence([0.01, 0.03], 3)) == pytest.approx(0.06)
    assert lemma32_bound(BetaSequence([], 4)) == 0.0


def test_single_threshold_is_bonferroni():
    assert lemma32_bound(BetaSequence([0.02], 10)) == pytest.approx(0.2)


@pytest.mark.parametrize("betas, t", [([0.2, 0.1], 3), ([0.1, 0.2, 0.3], 2), ([-0.1], 1), ([1.5], 1), ([[0.1]], 1)])
def test_beta_validation(betas, t):
    with pytest.raises(ValueError):
        BetaSequence(np.array(betas, dtype=float), t)


def test_kfwer_betas_layout():
    a = template_linear(6).values
    bs = kfwer_beta_sequence(2, 6, 4, a)
    # |I|=4: first k-1 thresholds are zero, then alpha_{s-|I|+j} for j=k..|I|
    np.testing.assert_allclose(bs.betas, [0, a[3], a[4], a[5]])
    assert bs.t == 4


def test_fdp_terms_columns():
    g, s, card = Fraction(1, 4), 12, 7
    idx, ell = fdp_terms(g, s, card)
    for i, l in zip(idx, ell):
        k = i - (s - card)
        assert card >= m_of(g, i)
        assert l == max(k, m_of(g, i))
    assert np.all(np.diff(idx) > 0) and np.all(np.diff(ell) >= 0)


def test_fdp_envelope_event_equals_term_union(rng):
    """Union over terms {q_(l) <= alpha_idx} is the same event as the envelope union."""
    g, s = Fraction(1, 5), 20
    a = template_fdp(g, s).values * 0.3
    for card in (3, 9, 20):
        idx, ell = fdp_terms(g, s, card)
        bs = fdp_beta_sequence(g, s, card, a)
        q = rng.uniform(0, 0.4, (4000, card)) ** 2
        qs = np.sort(q, axis=1)
        terms = (qs[:, ell - 1] <= a[idx - 1]).any(axis=1)
        np.testing.assert_array_equal(terms, lemma32_union_event(q, bs))


@pytest.mark.parametrize("k, s", [(1, 8), (2, 15), (3, 30)])
def test_identity_with_s1(k, s):
    for a in (template_kfwer(k, s).values, template_linear(s).values):
        for card in range(k, s + 1):
            assert lemma32_bound(kfwer_beta_sequence(k, s, card, a)) == pytest.approx(s1(k, s, card, a), abs=1e-12)


@pytest.mark.parametrize("g", ["0", "1/10", "1/3"])
def test_identity_with_s2(g):
    s = 30
    for a in (template_fdp(g, s).values, template_linear(s).values):
        for card in range(1, s + 1):
            assert lemma32_bound(fdp_beta_sequence(g, s, card, a)) == pytest.approx(s2(g, s, card, a), abs=1e-12)


def _scaled_betas(t, target):
    raw = np.sort(np.random.default_rng(t).uniform(0.05, 1, t))
    bs = BetaSequence(raw, t)
    return BetaSequence(raw * target / lemma32_bound(bs), t)


@pytest.mark.parametrize("target", [0.05, 0.2, 0.5, 0.9])
def test_worst_case_attains_bound(target):
    t = 6
    model = Lemma32WorstCase(_scaled_betas(t, target))
    u = np.random.default_rng(7).random((40_000, model.width))
    hit = model.union_event(model.draw(u)).mean()
    se = np.sqrt(target * (1 - target) / u.shape[0])
    assert abs(hit - target) <= 3 * se


def test_worst_case_marginals_are_valid():
    bs = BetaSequence([0.01, 0.02, 0.05, 0.08], 5)
    model = Lemma32WorstCase(bs)
    p = model.draw(np.random.default_rng(3).random((100_000, model.width)))
    # each coordinate is uniform on [0, beta_m], so P{p <= u} = u there
    for u in (0.005, 0.02, 0.05, 0.08):
        frac = (p <= u).mean(axis=0)
        se = np.sqrt(u * (1 - u) / p.shape[0])
        assert np.all(frac <= u + 4 * se)
        assert np.all(frac >= u - 4 * se)
    assert np.all((p <= 0.08) | (p == 1.0))


def test_worst_case_refuses_bound_above_one():
    with pytest.raises(SharpnessInfeasible):
        Lemma32WorstCase(BetaSequence([0.5, 0.9], 3))
