"""
abcmeta

Estimate a study's sample mean and standard deviation from reported
summary statistics (minimum, quartiles, median, maximum, n).

Key components:
- core: Summary statistics, scenarios and errors
- distributions: Parametric families, special functions, random streams
- estimators: Closed-form rules (ad-hoc, Hozo, Bland, Wan)
- abc: ABC rejection sampler and distribution selection
- simulation: Average-relative-error studies and selection studies
- config: Defaults, experiment files and bundled presets
- validation: Schema validation
- io: Study tables, result tables and run manifests
"""

__version__ = "1.0.0"

from .core import (
    # Scenario
    Scenario,
    QuantileRule,
    # Summary
    SummaryStats,
    SummaryVector,
    validate,
    detect_scenario,
    to_vector,
    summarize_sample,
    # Errors
    AbcMetaError,
    RowError,
)

from .distributions import (
    Family,
    DistributionSpec,
    Moments,
    sample,
    moments,
    normal_quantile,
    gamma_fn,
)

from .estimators import (
    Method,
    Estimate,
    adhoc_estimate,
    hozo_estimate,
    bland_estimate,
    wan_estimate,
    closed_form_estimate,
)

from .abc import (
    PriorConfig,
    default_priors,
    Estimator,
    AbcConfig,
    AbcResult,
    abc_run,
    ModelSelectionResult,
    select_distribution,
)

from .simulation import (
    ExperimentConfig,
    AreRecord,
    SelectionExperimentConfig,
    run_trial,
    run_experiment,
    run_selection_experiment,
)

__all__ = [
    # Version
    "__version__",
    # Scenario
    "Scenario",
    "QuantileRule",
    # Summary
    "SummaryStats",
    "SummaryVector",
    "validate",
    "detect_scenario",
    "to_vector",
    "summarize_sample",
    # Errors
    "AbcMetaError",
    "RowError",
    # Distributions
    "Family",
    "DistributionSpec",
    "Moments",
    "sample",
    "moments",
    "normal_quantile",
    "gamma_fn",
    # Closed form
    "Method",
    "Estimate",
    "adhoc_estimate",
    "hozo_estimate",
    "bland_estimate",
    "wan_estimate",
    "closed_form_estimate",
    # ABC
    "PriorConfig",
    "default_priors",
    "Estimator",
    "AbcConfig",
    "AbcResult",
    "abc_run",
    "ModelSelectionResult",
    "select_distribution",
    # Simulation
    "ExperimentConfig",
    "AreRecord",
    "SelectionExperimentConfig",
    "run_trial",
    "run_experiment",
    "run_selection_experiment",
]
