from fractions import Fraction

import numpy as np
import pytest

from stepup import reports
from stepup.constants import d2
from stepup.sequences import harmonic, template_linear


def test_table_shapes():
    assert len(reports.table1(s_grid=(10, 25))) == 2 * 3 * 2
    assert len(reports.table2(s_grid=(10,))) == 2 * 2
    rows = reports.table3(s_grid=(10, 25))
    assert {r["s"] for r in rows} == {10, 25}


def test_ratio_for_linear_template_is_flat():
    for median in (False, True):
        r = reports.fdp_vs_by_ratios(Fraction(1, 10), 100, median)
        assert r["ratio_19_spread"] < 1e-12
        assert r["ratio_19"] == pytest.approx(r["ratio_19_closed_form"], abs=1e-9)


def test_median_ratio_halves_the_markov_ratio():
    # Markov comparator uses gamma*alpha at alpha; median uses gamma at alpha=1/2
    g, s = Fraction(1, 20), 50
    a = reports.fdp_vs_by_ratios(g, s, False)
    b = reports.fdp_vs_by_ratios(g, s, True)
    for key in ("min_26", "max_26", "ratio_19"):
        assert b[key] == pytest.approx(a[key] / 2, rel=1e-12)


def test_closed_form_by_hand():
    g, s = Fraction(1, 10), 25
    D = d2(g, s, template_linear(s)).D
    assert reports.fdp_vs_by_ratios(g, s)["ratio_19"] == pytest.approx(harmonic(s) / (0.1 * D), rel=1e-12)


def test_figure1_crosses_one():
    ratio = np.array([r["ratio"] for r in reports.figure1()])
    assert ratio[0] > 1 and ratio[-1] > 1 and ratio.min() < 1


def test_figure2_crosses_one():
    ratio = np.array([r["ratio"] for r in reports.figure2()])
    assert ratio[0] > 1 and ratio[-1] > 1 and ratio.min() < 1


def test_figure3_extremes_match_median_table_cell():
    # gamma = 0.1, s = 1000
    ratio = np.array([r["ratio"] for r in reports.figure3()])
    assert ratio.max() == pytest.approx(7.65, abs=0.01)
    assert ratio.min() == pytest.approx(0.81, abs=0.01)
    row = reports.fdp_vs_by_ratios(Fraction(1, 10), 1000, median=True)
    assert ratio.max() == row["max_26"] and ratio.min() == row["min_26"]


def test_figure_series_fields():
    rows = reports.figure1()
    assert len(rows) == 100 and rows[0]["i"] == 1
    assert all(r["ratio"] == pytest.approx(r["a"] / r["b"]) for r in rows)
