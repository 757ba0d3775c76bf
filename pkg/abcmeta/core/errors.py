"""
Error types for abcmeta.

Defines structured error types that can be:
- Raised by the summary, distribution, estimator and ABC layers
- Turned into per-row error cells by the CLI
- Reported with the offending values attached
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional
from enum import Enum


class ErrorCategory(str, Enum):
    """Categories of errors."""
    SUMMARY = "summary"             # Reported statistics are inconsistent
    DISTRIBUTION = "distribution"   # Bad family parameters or special-function domain
    ESTIMATION = "estimation"       # A closed-form estimator cannot be applied
    ABC = "abc"                     # Sampler setup or acceptance problem
    CONFIG = "config"               # Experiment or CLI configuration
    PARSE = "parse"                 # Input table could not be read


@dataclass
class RowError:
    """A failed (study, method) cell in an output table."""
    study_id: str
    method: str
    code: str
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "study_id": self.study_id,
            "method": self.method,
            "code": self.code,
            "message": self.message,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RowError":
        return cls(
            study_id=data.get("study_id", ""),
            method=data.get("method", ""),
            code=data.get("code", ""),
            message=data.get("message", ""),
        )

    @classmethod
    def from_exception(cls, study_id: str, method: str, exc: Exception) -> "RowError":
        code = getattr(exc, "code", type(exc).__name__)
        return cls(study_id=study_id, method=method, code=code, message=str(exc))

    def __str__(self) -> str:
        return f"{self.study_id}/{self.method}: {self.code} {self.message}"


# =============================================================================
# EXCEPTIONS
# =============================================================================

class AbcMetaError(Exception):
    """Base exception for abcmeta errors."""
    category: ErrorCategory = ErrorCategory.ESTIMATION
    code: str = "Error"


# --- summary statistics -------------------------------------------------------

class SummaryError(AbcMetaError):
    category = ErrorCategory.SUMMARY
    code = "SummaryError"


class OrderingViolation(SummaryError):
    """A reported quantile is out of order (or not finite)."""
    code = "OrderingViolation"

    def __init__(self, lower_field: str, lower: float, upper_field: str, upper: float):
        super().__init__(
            f"{lower_field}={lower!r} must not exceed {upper_field}={upper!r}"
        )
        self.lower_field = lower_field
        self.lower = lower
        self.upper_field = upper_field
        self.upper = upper


class MissingField(SummaryError):
    """The scenario needs a statistic that was not reported."""
    code = "MissingField"

    def __init__(self, fields: List[str], scenario: Optional[str] = None):
        where = f" for scenario {scenario}" if scenario else ""
        super().__init__(f"missing {', '.join(fields)}{where}")
        self.fields = fields
        self.scenario = scenario


class SampleSizeTooSmall(SummaryError):
    code = "SampleSizeTooSmall"

    def __init__(self, n: int):
        super().__init__(f"sample size n={n} is below 2")
        self.n = n


class EmptySample(SummaryError):
    code = "EmptySample"

    def __init__(self):
        super().__init__("sample is empty")
        self.n = 0


# --- distributions ------------------------------------------------------------

class DistributionError(AbcMetaError):
    category = ErrorCategory.DISTRIBUTION
    code = "DistributionError"


class InvalidParameters(DistributionError):
    code = "InvalidParameters"

    def __init__(self, family: str, message: str):
        super().__init__(f"{family}: {message}")
        self.family = family


class DomainError(DistributionError, ValueError):
    """Argument outside the domain of a special function."""
    code = "DomainError"

    def __init__(self, function: str, value: float):
        super().__init__(f"{function} is undefined at {value!r}")
        self.function = function
        self.value = value


# --- closed-form estimators ---------------------------------------------------

class EstimationError(AbcMetaError):
    category = ErrorCategory.ESTIMATION
    code = "EstimationError"


class UnsupportedScenario(EstimationError):
    code = "UnsupportedScenario"

    def __init__(self, method: str, scenario: str):
        super().__init__(f"method {method} is not defined for scenario {scenario}")
        self.method = method
        self.scenario = scenario


class NegativeVariance(EstimationError):
    code = "NegativeVariance"

    def __init__(self, method: str, variance: float):
        super().__init__(f"{method} variance estimate is negative ({variance!r})")
        self.method = method
        self.variance = variance


class DegenerateRange(EstimationError):
    code = "DegenerateRange"

    def __init__(self, n: int, probability: float):
        super().__init__(
            f"normal quantile argument {probability!r} <= 0.5 for n={n}"
        )
        self.n = n
        self.probability = probability


# --- ABC ----------------------------------------------------------------------

class AbcError(AbcMetaError):
    category = ErrorCategory.ABC
    code = "AbcError"


class NonPositiveSupport(AbcError):
    code = "NonPositiveSupport"

    def __init__(self, field_name: str, value: float):
        super().__init__(f"log prior bound needs {field_name} > 0, got {value!r}")
        self.field_name = field_name
        self.value = value


class IncompatibleSupport(AbcError):
    code = "IncompatibleSupport"

    def __init__(self, family: str, message: str):
        super().__init__(f"{family}: {message}")
        self.family = family


class NoAcceptedDraws(AbcError):
    code = "NoAcceptedDraws"

    def __init__(self, epsilon: float, n_iter: int, min_distance: float):
        super().__init__(
            f"no draw within epsilon={epsilon!r} after {n_iter} iterations "
            f"(smallest distance {min_distance!r})"
        )
        self.epsilon = epsilon
        self.n_iter = n_iter
        self.min_distance = min_distance


class LengthMismatch(AbcError, ValueError):
    code = "LengthMismatch"

    def __init__(self, left: int, right: int):
        super().__init__(f"summary vectors differ in length ({left} vs {right})")
        self.left = left
        self.right = right


class DegenerateSelection(AbcError):
    code = "DegenerateSelection"

    def __init__(self, threshold: float):
        super().__init__(
            f"accepted draws all tie at distance {threshold!r} across candidates"
        )
        self.threshold = threshold


# --- configuration and input --------------------------------------------------

class ConfigError(AbcMetaError):
    category = ErrorCategory.CONFIG
    code = "ConfigError"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class ParseError(AbcMetaError):
    category = ErrorCategory.PARSE
    code = "ParseError"

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        loc = ""
        if row is not None:
            loc = f"row {row}"
            if column:
                loc += f", column {column}"
            loc += ": "
        super().__init__(f"{loc}{message}")
        self.row = row
        self.column = column

    def details(self) -> Dict[str, Any]:
        return {"row": self.row, "column": self.column}
