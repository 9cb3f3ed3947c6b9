"""Critical-value templates and the small combinatorial helpers they need."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

GammaLike = Union[Fraction, int, str]


@dataclass(frozen=True, eq=False)
class CriticalSequence:
    """Nondecreasing rejection thresholds alpha_1 <= ... <= alpha_s, all in (0, 1]."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("a critical sequence needs at least one value")
        if not np.all(np.isfinite(v)):
            raise ValueError("critical values must be finite")
        if np.any(v <= 0.0) or np.any(v > 1.0):
            raise ValueError("critical values must lie in (0, 1]")
        if np.any(np.diff(v) < 0.0):
            raise ValueError("critical values must be nondecreasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CriticalSequence):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    @property
    def s(self) -> int:
        return self.values.size

    def alpha(self, i: int) -> float:
        """1-based access, alpha(1) is the smallest threshold."""
        if not 1 <= i <= self.s:
            raise IndexError(f"index {i} outside 1..{self.s}")
        return float(self.values[i - 1])

    def scaled(self, factor: float) -> "CriticalSequence":
        return CriticalSequence(self.values * factor)


def as_values(seq: CriticalSequence | Iterable[float]) -> np.ndarray:
    if isinstance(seq, CriticalSequence):
        return seq.values
    return np.asarray(list(seq) if not isinstance(seq, np.ndarray) else seq, dtype=float)


def parse_gamma(value: GammaLike) -> Fraction:
    """Exact rational from a Fraction, an int, "p/q", or a decimal string.

    Floats are rejected on purpose: 0.1 is not 1/10 and floor(gamma * j) is
    sensitive to exactly that kind of error.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError("gamma must be exact: pass a Fraction or a string such as '1/10'")
    try:
        g = Fraction(value.strip() if isinstance(value, str) else value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse gamma from {value!r}") from exc
    if not 0 <= g < 1:
        raise ValueError(f"gamma must lie in [0, 1), got {g}")
    return g


def harmonic(j: int) -> float:
    """C_j = 1 + 1/2 + ... + 1/j."""
    if j < 1:
        raise ValueError("harmonic number needs j >= 1")
    return math.fsum(1.0 / i for i in range(1, j + 1))


def m_of(gamma: GammaLike, j: int) -> int:
    """floor(gamma * j) + 1, computed exactly."""
    g = parse_gamma(gamma)
    if j < 1:
        raise ValueError("j must be >= 1")
    return g.numerator * j // g.denominator + 1


def m_array(gamma: GammaLike, s: int) -> np.ndarray:
    """m(j) for j = 1..s as an int64 array (index 0 holds m(1))."""
    g = parse_gamma(gamma)
    if g.numerator * s < 2**62 and g.denominator < 2**62:
        j = np.arange(1, s + 1, dtype=np.int64)
        return (g.numerator * j) // g.denominator + 1
    # huge numerator or denominator: stay in Python ints; m(j) <= j + 1 fits anyway
    return np.array([g.numerator * j // g.denominator + 1 for j in range(1, s + 1)], dtype=np.int64)


def template_kfwer(k: int, s: int) -> CriticalSequence:
    """k/s for i <= k, then k/(s + k - i)."""
    if s < 1 or not 1 <= k <= s:
        raise ValueError(f"need 1 <= k <= s, got k={k}, s={s}")
    i = np.arange(1, s + 1)
    return CriticalSequence(np.where(i <= k, k / s, k / (s + k - i)))


def template_linear(s: int) -> CriticalSequence:
    if s < 1:
        raise ValueError("s must be >= 1")
    return CriticalSequence(np.arange(1, s + 1) / s)


def template_fdp(gamma: GammaLike, s: int) -> CriticalSequence:
    """m(i)/(s + m(i) - i): the k-FWER template with k tracking floor(gamma*i)+1."""
    if s < 1:
        raise ValueError("s must be >= 1")
    m = m_array(gamma, s)
    i = np.arange(1, s + 1)
    return CriticalSequence(m / (s + m - i))


TEMPLATES = ("kfwer13", "linear19", "fdp26")


def make_template(name: str, s: int, *, k: int = 1, gamma: GammaLike = 0) -> CriticalSequence:
    """Build a template by its CLI name."""
    if name == "kfwer13":
        return template_kfwer(k, s)
    if name == "linear19":
        return template_linear(s)
    if name == "fdp26":
        return template_fdp(gamma, s)
    raise ValueError(f"unknown template {name!r}; choose from {', '.join(TEMPLATES)}")
