"""Two-visit rescue-rule trials: simulation and truncation-corrected effects.

Thin re-export of the compiled core. All estimation, simulation, and
Monte-Carlo routines are deterministic in (seed, replicate, subject) and
independent of thread count.
"""

from ._core import (
    ArmMoments,
    BootstrapResult,
    DegeneracyError,
    DomainError,
    EstimateMode,
    EstimateSet,
    IoError,
    McSummary,
    ScenarioParams,
    SlopeResidual,
    StrataEffects,
    StrataRow,
    StrataTable,
    SubjectRecord,
    SummaryStat,
    TrialDataset,
    TruncatedMoments,
    ValidationError,
    ValidationReport,
    __version__,
    bootstrap_corrected,
    compute_arm_moments,
    conditional_slope_and_residual,
    estimate_conditional,
    estimate_corrected,
    estimate_itt,
    estimate_sigma12,
    generate_trial,
    hazard,
    mu1,
    mu2,
    params_from_kv,
    params_to_kv,
    run_scenario,
    run_table,
    std_cdf,
    std_pdf,
    strata_effects,
    table2_grid,
    table3_grid,
    true_biological_effect,
    true_itt_effect,
    truncated_moments,
    validate_dataset,
)

__all__ = [
    "ArmMoments",
    "BootstrapResult",
    "DegeneracyError",
    "DomainError",
    "EstimateMode",
    "EstimateSet",
    "IoError",
    "McSummary",
    "ScenarioParams",
    "SlopeResidual",
    "StrataEffects",
    "StrataRow",
    "StrataTable",
    "SubjectRecord",
    "SummaryStat",
    "TrialDataset",
    "TruncatedMoments",
    "ValidationError",
    "ValidationReport",
    "__version__",
    "bootstrap_corrected",
    "compute_arm_moments",
    "conditional_slope_and_residual",
    "estimate_conditional",
    "estimate_corrected",
    "estimate_itt",
    "estimate_sigma12",
    "generate_trial",
    "hazard",
    "mu1",
    "mu2",
    "params_from_kv",
    "params_to_kv",
    "run_scenario",
    "run_table",
    "std_cdf",
    "std_pdf",
    "strata_effects",
    "table2_grid",
    "table3_grid",
    "true_biological_effect",
    "true_itt_effect",
    "truncated_moments",
    "validate_dataset",
]
