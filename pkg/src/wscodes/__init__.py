"""Weak superimposed codes: construction, verification, and rate bounds."""

from .bounds import (
    BoundRow,
    BoundTable,
    cff_rate_alteration,
    cff_rate_bui,
    cff_rate_deng,
    expected_violations,
    finite_rate,
    prob_violation,
    rate_lower_new,
    rate_lower_prior,
    rate_upper,
    weight_one_row_prob,
)
from .construct import (
    DEFAULT_N_GUARD,
    CapacityError,
    ConstructionConfig,
    ConstructionLog,
    DeletionRecord,
    RateWarning,
    alteration_construct,
    cff_alteration_construct,
    cff_target_size,
    sample_random_code,
    target_size,
)
from .experiments import (
    ProbabilityEstimate,
    SweepRow,
    TrialSummary,
    estimate_success_probability,
    estimate_violation_probability,
    rate_sweep,
    sweep_to_csv,
)
from .matrix import CodeMatrix, ParseError, dumps_wsc, loads_wsc, read_wsc, write_wsc
from .verify import (
    VerificationResult,
    ViolationReport,
    cff_verify,
    count_weak_violations,
    is_violated,
    max_code_exhaustive,
    min_distance,
    verify_locally_thin,
    verify_weak,
    weak_from_cff_check,
)

__version__ = "0.1.0"
