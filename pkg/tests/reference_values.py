"""Published reference values of the normalizing constants and ratio tables.

Values are as printed, two decimals (a few cells carry three).
"""

from fractions import Fraction

S_GRID = (10, 25, 50, 100, 250, 500, 1000, 2000, 5000)
G05, G10 = Fraction(1, 20), Fraction(1, 10)

# s -> (k=1: kfwer13, linear19, k=2: ..., k=3: ...)
_T1 = {
    10: (2.11, 3.92, 2.03, 2.57, 1.90, 2.10),
    25: (2.13, 7.99, 2.16, 4.72, 2.15, 3.60),
    50: (2.13, 14.52, 2.16, 8.10, 2.17, 5.91),
    100: (2.13, 27.32, 2.16, 14.63, 2.17, 10.33),
    250: (2.13, 65.25, 2.16, 33.77, 2.17, 23.22),
    500: (2.13, 128.08, 2.16, 65.34, 2.17, 44.36),
    1000: (2.13, 253.41, 2.16, 128.17, 2.17, 86.35),
    2000: (2.13, 503.75, 2.16, 253.51, 2.17, 170.01),
    5000: (2.13, 1254.20, 2.16, 628.96, 2.17, 420.46),
}
TABLE1 = {
    (s, k, tpl): row[2 * (k - 1) + j]
    for s, row in _T1.items()
    for k in (1, 2, 3)
    for j, tpl in enumerate(("kfwer13", "linear19"))
}

# s -> (gamma=0.05: fdp26, linear19, gamma=0.1: fdp26, linear19); stepdown column left out
_T2 = {
    10: (2.11, 3.91, 2.11, 3.91),
    25: (2.40, 7.99, 2.68, 7.78),
    50: (2.70, 14.12, 2.99, 10.96),
    100: (2.96, 20.32, 3.37, 15.09),
    250: (3.41, 31.04, 3.93, 21.21),
    500: (3.80, 40.33, 4.39, 26.33),
    1000: (4.24, 50.40, 4.89, 31.75),
    2000: (4.72, 61.05, 5.41, 37.37),
    5000: (5.39, 75.80, 6.14, 45.06),
}
TABLE2 = {
    (s, g, tpl): row[2 * gi + j]
    for s, row in _T2.items()
    for gi, g in enumerate((G05, G10))
    for j, tpl in enumerate(("fdp26", "linear19"))
}

# s -> (gamma=0.05: min26, max26, ratio19, gamma=0.1: min26, max26, ratio19)
_T3 = {
    10: (9.25, 27.76, 14.96, 4.63, 13.88, 7.48),
    25: (4.71, 31.86, 9.55, 2.33, 14.26, 4.91),
    50: (2.75, 33.40, 6.37, 1.99, 15.05, 4.10),
    100: (2.25, 35.02, 5.11, 1.86, 15.41, 3.44),
    250: (2.03, 35.80, 3.93, 1.75, 15.53, 2.88),
    500: (1.95, 35.72, 3.368, 1.68, 15.46, 2.58),
    1000: (1.88, 35.30, 2.97, 1.62, 15.30, 2.36),
    2000: (1.81, 34.67, 2.68, 1.58, 15.10, 2.19),
    5000: (1.73, 33.74, 2.40, 1.52, 14.82, 2.02),
}
_T4 = {
    10: (4.63, 13.88, 7.48, 2.31, 6.94, 3.74),
    25: (2.36, 15.93, 4.78, 1.17, 7.13, 2.45),
    50: (1.37, 16.70, 3.18, 1.00, 7.52, 2.05),
    100: (1.12, 17.51, 2.55, 0.93, 7.71, 1.72),
    250: (1.02, 17.90, 1.97, 0.88, 7.77, 1.44),
    500: (0.98, 17.86, 1.68, 0.84, 7.73, 1.29),
    1000: (0.94, 17.65, 1.49, 0.81, 7.65, 1.18),
    2000: (0.91, 17.34, 1.34, 0.79, 7.55, 1.09),
    5000: (0.87, 16.87, 1.20, 0.76, 7.411, 1.01),
}


def _ratio_cells(table):
    cols = ("min_26", "max_26", "ratio_19")
    return {
        (s, g, col): row[3 * gi + j]
        for s, row in table.items()
        for gi, g in enumerate((G05, G10))
        for j, col in enumerate(cols)
    }


TABLE3 = _ratio_cells(_T3)
TABLE4 = _ratio_cells(_T4)
