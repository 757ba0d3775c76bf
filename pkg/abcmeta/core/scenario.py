"""
Scenario definitions for reported summary statistics.

A study reports one of three statistic sets. This module defines which
fields each scenario needs, their canonical order inside a summary
vector, and the quantile conventions used to compute them.
"""

from enum import Enum
from typing import Dict, FrozenSet, Tuple, Union


class Scenario(str, Enum):
    """Which descriptive statistics a study reports."""

    S1 = "S1"   # min, median, max, n
    S2 = "S2"   # min, q1, median, q3, max, n
    S3 = "S3"   # q1, median, q3, n


class QuantileRule(str, Enum):
    """Sample quantile convention for medians and quartiles."""

    LINEAR = "linear"    # Type 7: position (n-1)p + 1
    WEIBULL = "weibull"  # Type 6: position (n+1)p

    @property
    def numpy_method(self) -> str:
        return self.value


# Statistic fields in ascending order of the quantile they report
FIELD_ORDER: Tuple[str, ...] = ("x_min", "x_q1", "x_med", "x_q3", "x_max")

FIELD_PROBS: Dict[str, float] = {
    "x_min": 0.0,
    "x_q1": 0.25,
    "x_med": 0.5,
    "x_q3": 0.75,
    "x_max": 1.0,
}

# Canonical summary-vector layout per scenario
SCENARIO_FIELDS: Dict[Scenario, Tuple[str, ...]] = {
    Scenario.S1: ("x_min", "x_med", "x_max"),
    Scenario.S2: ("x_min", "x_q1", "x_med", "x_q3", "x_max"),
    Scenario.S3: ("x_q1", "x_med", "x_q3"),
}

REQUIRED_FIELDS: Dict[Scenario, FrozenSet[str]] = {
    s: frozenset(fields) for s, fields in SCENARIO_FIELDS.items()
}

# Order in which auto-detection tries scenarios: the richest first
DETECTION_ORDER: Tuple[Scenario, ...] = (Scenario.S2, Scenario.S1, Scenario.S3)


def normalize_scenario(value: Union[Scenario, str]) -> Scenario:
    """Accept 'S1', 's1' or a Scenario."""
    if isinstance(value, Scenario):
        return value
    try:
        return Scenario(str(value).strip().upper())
    except ValueError:
        raise ValueError(f"Unknown scenario: {value!r}") from None


def normalize_quantile_rule(value: Union[QuantileRule, str]) -> QuantileRule:
    if isinstance(value, QuantileRule):
        return value
    try:
        return QuantileRule(str(value).strip().lower())
    except ValueError:
        raise ValueError(f"Unknown quantile rule: {value!r}") from None


def get_fields(scenario: Union[Scenario, str]) -> Tuple[str, ...]:
    """Fields of the scenario in summary-vector order."""
    return SCENARIO_FIELDS[normalize_scenario(scenario)]


def get_probs(scenario: Union[Scenario, str]) -> Tuple[float, ...]:
    return tuple(FIELD_PROBS[f] for f in get_fields(scenario))


def vector_length(scenario: Union[Scenario, str]) -> int:
    return len(get_fields(scenario))
