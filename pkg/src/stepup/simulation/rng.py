"""Per-replication random streams.

Replication r always draws from Philox keyed by the run seed with counter
word 1 set to r, so any split of the replications across chunks or workers
sees the same numbers.
"""

from __future__ import annotations

import numpy as np

SEED_BITS = 64


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**SEED_BITS:
        raise ValueError("seed must be a non-negative 64-bit integer")
    return seed


def replication_rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=_check_seed(seed), counter=[0, rep, 0, 0]))


def replication_uniforms(seed: int, start: int, stop: int, width: int) -> np.ndarray:
    """Rows start..stop-1 of the uniform matrix, each row from its own stream."""
    seed = _check_seed(seed)
    out = np.empty((stop - start, width))
    for row, rep in enumerate(range(start, stop)):
        out[row] = np.random.Generator(np.random.Philox(key=seed, counter=[0, rep, 0, 0])).random(width)
    return out
