"""Error metrics a procedure can be asked to control."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .sequences import GammaLike, parse_gamma


@dataclass(frozen=True)
class KFWER:
    """P{at least k true hypotheses rejected}."""

    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class FDPTail:
    """P{FDP > gamma}, to be kept at or below alpha."""

    gamma: Fraction
    alpha: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", parse_gamma(self.gamma))
        if self.alpha is not None and not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")

    @classmethod
    def of(cls, gamma: GammaLike, alpha: Optional[float] = None) -> "FDPTail":
        return cls(parse_gamma(gamma), alpha)


@dataclass(frozen=True)
class FDR:
    """E(FDP), to be kept at or below q."""

    q: Optional[float] = None


ErrorMetric = Union[KFWER, FDPTail, FDR]


def describe(metric: ErrorMetric) -> dict:
    if isinstance(metric, KFWER):
        return {"metric": "kfwer", "k": metric.k}
    if isinstance(metric, FDPTail):
        out = {"metric": "fdp", "gamma": str(metric.gamma)}
        if metric.alpha is not None:
            out["alpha"] = metric.alpha
        return out
    if isinstance(metric, FDR):
        out = {"metric": "fdr"}
        if metric.q is not None:
            out["q"] = metric.q
        return out
    raise TypeError(f"not an error metric: {metric!r}")
