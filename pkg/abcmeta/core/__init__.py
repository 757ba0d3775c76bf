"""
Core domain types for abcmeta.
"""

from .scenario import (
    Scenario,
    QuantileRule,
    FIELD_ORDER,
    SCENARIO_FIELDS,
    REQUIRED_FIELDS,
    normalize_scenario,
    normalize_quantile_rule,
    get_fields,
    vector_length,
)

from .errors import (
    ErrorCategory,
    RowError,
    AbcMetaError,
    SummaryError,
    OrderingViolation,
    MissingField,
    SampleSizeTooSmall,
    EmptySample,
    DistributionError,
    InvalidParameters,
    DomainError,
    EstimationError,
    UnsupportedScenario,
    NegativeVariance,
    DegenerateRange,
    AbcError,
    NonPositiveSupport,
    IncompatibleSupport,
    NoAcceptedDraws,
    LengthMismatch,
    DegenerateSelection,
    ConfigError,
    ParseError,
)

from .summary import (
    SummaryStats,
    SummaryVector,
    validate,
    detect_scenario,
    to_vector,
    summarize_batch,
    summarize_sample,
)

__all__ = [
    # Scenario
    "Scenario",
    "QuantileRule",
    "FIELD_ORDER",
    "SCENARIO_FIELDS",
    "REQUIRED_FIELDS",
    "normalize_scenario",
    "normalize_quantile_rule",
    "get_fields",
    "vector_length",
    # Errors
    "ErrorCategory",
    "RowError",
    "AbcMetaError",
    "SummaryError",
    "OrderingViolation",
    "MissingField",
    "SampleSizeTooSmall",
    "EmptySample",
    "DistributionError",
    "InvalidParameters",
    "DomainError",
    "EstimationError",
    "UnsupportedScenario",
    "NegativeVariance",
    "DegenerateRange",
    "AbcError",
    "NonPositiveSupport",
    "IncompatibleSupport",
    "NoAcceptedDraws",
    "LengthMismatch",
    "DegenerateSelection",
    "ConfigError",
    "ParseError",
    # Summary
    "SummaryStats",
    "SummaryVector",
    "validate",
    "detect_scenario",
    "to_vector",
    "summarize_batch",
    "summarize_sample",
]
