"""Stepup multiple-testing procedures that control the k-FWER and the tail of the FDP."""

from .bounds import BetaSequence, fdp_beta_sequence, kfwer_beta_sequence, lemma32_bound
from .constants import (
    NormalizationReport,
    d1,
    d2,
    fdp_stepup_values,
    kfwer_stepup_values,
    s1,
    s2,
    strong_control_factor_exact,
    weak_control_factor,
)
from .metrics import FDR, KFWER, FDPTail
from .procedures import (
    PValueVector,
    RankedDecision,
    RejectionOutcome,
    TruthMask,
    bh_values,
    by_counterexample_fwer_bound,
    by_derived_fdp_values,
    by_fdr_values,
    compute_fdp,
    count_false_rejections,
    fdp_fdr_conversion,
    fdr_bound_from_fdp,
    fdr_median_comparators,
    hochberg_values,
    holm_values,
    stepdown,
    stepup,
)
from .sequences import (
    CriticalSequence,
    harmonic,
    m_of,
    make_template,
    parse_gamma,
    template_fdp,
    template_kfwer,
    template_linear,
)

__version__ = "0.1.0"
