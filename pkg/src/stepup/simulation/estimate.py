"""Monte-Carlo estimation of error rates under a joint p-value model."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..metrics import FDR, KFWER, ErrorMetric, FDPTail
from ..procedures import ENGINES
from ..sequences import as_values
from .models import JointModel
from .rng import replication_uniforms

DEFAULT_REPS = 100_000
DEFAULT_SEED = 20060801
CHUNK = 8192


@dataclass(frozen=True)
class Procedure:
    crit: np.ndarray
    engine: str = "stepup"
    name: str = ""

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        object.__setattr__(self, "crit", np.asarray(as_values(self.crit), dtype=float))


@dataclass(frozen=True)
class SimulationEstimate:
    metric: ErrorMetric
    estimate: float
    std_error: float
    replications: int
    seed: int

    def within(self, target: float, n_se: float = 3.0) -> bool:
        return abs(self.estimate - target) <= n_se * self.std_error

    def at_most(self, level: float, n_se: float = 3.0) -> bool:
        return self.estimate <= level + n_se * self.std_error


@dataclass(frozen=True)
class Replications:
    num_rejected: np.ndarray
    false_rejections: np.ndarray


def _chunks(reps: int, chunk: int):
    return [(a, min(a + chunk, reps)) for a in range(0, reps, chunk)]


def draw_chunk(model: JointModel, seed: int, start: int, stop: int) -> np.ndarray:
    return model.draw(replication_uniforms(seed, start, stop, model.width))


def iter_draws(model: JointModel, reps: int, seed: int, chunk: int = CHUNK):
    """Yield (first replication index, p-value matrix) blocks."""
    for start, stop in _chunks(reps, chunk):
        yield start, draw_chunk(model, seed, start, stop)


def evaluate(p: np.ndarray, truth: np.ndarray, procedure: Procedure) -> tuple[np.ndarray, np.ndarray]:
    """Total and false rejections for each row of p."""
    if p.shape[1] != procedure.crit.size:
        raise ValueError(f"model has s={p.shape[1]} but the procedure has {procedure.crit.size} critical values")
    p_sorted = np.sort(p, axis=1)
    r = ENGINES[procedure.engine](p_sorted, procedure.crit)
    # ties never straddle the cut, so rejecting p <= p_(r) rejects exactly r
    cut = np.where(r > 0, p_sorted[np.arange(p.shape[0]), np.maximum(r - 1, 0)], -1.0)
    rejected = p <= cut[:, None]
    return r, (rejected & truth).sum(axis=1)


def run_replications(
    model: JointModel, procedure: Procedure, reps: int, seed: int, workers: int = 1, chunk: int = CHUNK
) -> Replications:
    if reps < 1:
        raise ValueError("reps must be >= 1")

    def one(bounds):
        p = draw_chunk(model, seed, *bounds)
        return evaluate(p, model.truth, procedure)

    spans = _chunks(reps, chunk)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, spans))
    else:
        parts = [one(b) for b in spans]
    return Replications(
        np.concatenate([r for r, _ in parts]),
        np.concatenate([v for _, v in parts]),
    )


def metric_values(metric: ErrorMetric, res: Replications) -> np.ndarray:
    r, v = res.num_rejected, res.false_rejections
    if isinstance(metric, KFWER):
        return (v >= metric.k).astype(float)
    if isinstance(metric, FDPTail):
        g = metric.gamma
        # v / r > gamma, in integers
        return (v * g.denominator > g.numerator * r).astype(float)
    if isinstance(metric, FDR):
        return np.divide(v, r, out=np.zeros(r.shape), where=r > 0)
    raise TypeError(f"not an error metric: {metric!r}")


def estimate_error_rate(
    model: JointModel,
    procedure: Procedure,
    metric: ErrorMetric,
    reps: int = DEFAULT_REPS,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> SimulationEstimate:
    x = metric_values(metric, run_replications(model, procedure, reps, seed, workers))
    est = float(np.mean(x))
    if isinstance(metric, FDR):
        se = float(np.std(x, ddof=1) / math.sqrt(reps)) if reps > 1 else 0.0
    else:
        se = math.sqrt(est * (1.0 - est) / reps)
    return SimulationEstimate(metric, est, se, reps, seed)
