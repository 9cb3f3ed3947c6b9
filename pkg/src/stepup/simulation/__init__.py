from .estimate import (
    DEFAULT_REPS,
    DEFAULT_SEED,
    Procedure,
    Replications,
    SimulationEstimate,
    estimate_error_rate,
    evaluate,
    iter_draws,
    run_replications,
)
from .models import (
    ByCounterexample,
    FdpAdversary,
    IndependentUniform,
    JointModel,
    KfwerAdversary,
    Lemma32WorstCase,
    SharpnessInfeasible,
    lemma32_union_event,
    sample_by_counterexample,
    sample_fdp_adversary,
    sample_kfwer_adversary,
    sample_lemma32_worst_case,
)
from .rng import replication_rng, replication_uniforms
from ..procedures import by_counterexample_fwer_bound

__all__ = [
    "DEFAULT_REPS",
    "DEFAULT_SEED",
    "ByCounterexample",
    "FdpAdversary",
    "IndependentUniform",
    "JointModel",
    "KfwerAdversary",
    "Lemma32WorstCase",
    "Procedure",
    "Replications",
    "SharpnessInfeasible",
    "SimulationEstimate",
    "by_counterexample_fwer_bound",
    "estimate_error_rate",
    "evaluate",
    "iter_draws",
    "lemma32_union_event",
    "replication_rng",
    "replication_uniforms",
    "run_replications",
    "sample_by_counterexample",
    "sample_fdp_adversary",
    "sample_kfwer_adversary",
    "sample_lemma32_worst_case",
]
