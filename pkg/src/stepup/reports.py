"""Normalizing-constant tables and the constant-sequence comparisons behind the figures."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .constants import d1, d2, fdp_stepup_values, kfwer_stepup_values
from .procedures import by_derived_fdp_values, fdr_median_comparators
from .sequences import harmonic, template_fdp, template_kfwer, template_linear

S_GRID = (10, 25, 50, 100, 250, 500, 1000, 2000, 5000)
K_GRID = (1, 2, 3)
GAMMA_GRID = (Fraction(1, 20), Fraction(1, 10))
D3_FOOTNOTE = "D3 (stepdown constant from earlier work) is not computed; its column is omitted."

# alpha cancels in every ratio below; any value in (0, 1) gives the same table
_RATIO_ALPHA = 0.05


def table1(s_grid=S_GRID, k_grid=K_GRID) -> list[dict]:
    rows = []
    for s in s_grid:
        for k in k_grid:
            for name, seq in (("kfwer13", template_kfwer(k, s)), ("linear19", template_linear(s))):
                rep = d1(k, s, seq)
                rows.append({"s": s, "k": k, "template": name, "D1": rep.D, "argmax_card_i": rep.argmax_card_i})
    return rows


def table2(s_grid=S_GRID, gamma_grid=GAMMA_GRID) -> list[dict]:
    rows = []
    for s in s_grid:
        for g in gamma_grid:
            for name, seq in (("fdp26", template_fdp(g, s)), ("linear19", template_linear(s))):
                rep = d2(g, s, seq)
                rows.append({"s": s, "gamma": g, "template": name, "D2": rep.D, "argmax_card_i": rep.argmax_card_i})
    return rows


def fdp_vs_by_ratios(gamma: Fraction, s: int, median: bool = False) -> dict:
    """min/max over i of (FDP stepup constants) / (BY-based constants).

    With median=False the comparator is the Markov-converted BY sequence at
    the same alpha; with median=True the FDP constants use alpha = 1/2 and the
    comparator is BY at FDR level gamma.
    """
    lin = template_linear(s)
    fdp26 = template_fdp(gamma, s)
    if median:
        base = fdr_median_comparators(s, gamma).values
        alpha = 0.5
    else:
        base = by_derived_fdp_values(s, gamma, _RATIO_ALPHA).values
        alpha = _RATIO_ALPHA
    r26 = fdp_stepup_values(gamma, s, alpha, fdp26).values / base
    r19 = fdp_stepup_values(gamma, s, alpha, lin).values / base
    D19 = d2(gamma, s, lin).D
    closed = harmonic(s) / ((2 if median else 1) * float(gamma) * D19)
    return {
        "min_26": float(r26.min()),
        "max_26": float(r26.max()),
        "ratio_19": float(r19.mean()),
        "ratio_19_spread": float(r19.max() - r19.min()),
        "ratio_19_closed_form": closed,
    }


def _ratio_table(median: bool, s_grid, gamma_grid) -> list[dict]:
    rows = []
    for s in s_grid:
        for g in gamma_grid:
            rows.append({"s": s, "gamma": g, **fdp_vs_by_ratios(g, s, median)})
    return rows


def table3(s_grid=S_GRID, gamma_grid=GAMMA_GRID) -> list[dict]:
    return _ratio_table(False, s_grid, gamma_grid)


def table4(s_grid=S_GRID, gamma_grid=GAMMA_GRID) -> list[dict]:
    return _ratio_table(True, s_grid, gamma_grid)


TABLES = {1: table1, 2: table2, 3: table3, 4: table4}


def _series(a: np.ndarray, b: np.ndarray) -> list[dict]:
    return [
        {"i": i, "a": float(x), "b": float(y), "ratio": float(x / y)}
        for i, (x, y) in enumerate(zip(a, b), start=1)
    ]


def figure1(k: int = 2, s: int = 100, alpha: float = 0.05) -> list[dict]:
    """k-FWER stepup constants: k-FWER template (a) against linear template (b)."""
    a = kfwer_stepup_values(k, s, alpha, template_kfwer(k, s)).values
    b = kfwer_stepup_values(k, s, alpha, template_linear(s)).values
    return _series(a, b)


def figure2(gamma: Fraction = Fraction(1, 10), s: int = 100, alpha: float = 0.05) -> list[dict]:
    """FDP stepup constants: FDP template (a) against linear template (b)."""
    a = fdp_stepup_values(gamma, s, alpha, template_fdp(gamma, s)).values
    b = fdp_stepup_values(gamma, s, alpha, template_linear(s)).values
    return _series(a, b)


def figure3(gamma: Fraction = Fraction(1, 10), s: int = 1000) -> list[dict]:
    """Median-FDP constants from the FDP template (a) against BY at FDR level gamma (b)."""
    a = fdp_stepup_values(gamma, s, 0.5, template_fdp(gamma, s)).values
    b = fdr_median_comparators(s, gamma).values
    return _series(a, b)


FIGURES = {1: figure1, 2: figure2, 3: figure3}
