"""
Summary-statistic containers for abcmeta.

SummaryStats is what a study reports; SummaryVector is the ordered list of
statistics a scenario compares. Both the observed data and every pseudo
dataset of the ABC loop are reduced through the same functions here.
"""

from dataclasses import dataclass, field, fields as dc_fields
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import math

import numpy as np

from .errors import EmptySample, MissingField, OrderingViolation, SampleSizeTooSmall
from .scenario import (
    DETECTION_ORDER,
    FIELD_ORDER,
    FIELD_PROBS,
    REQUIRED_FIELDS,
    QuantileRule,
    Scenario,
    get_fields,
    normalize_quantile_rule,
    normalize_scenario,
)


@dataclass(frozen=True)
class SummaryStats:
    """Descriptive statistics reported by one study."""
    x_med: float
    n: int
    x_min: Optional[float] = None
    x_q1: Optional[float] = None
    x_q3: Optional[float] = None
    x_max: Optional[float] = None

    def get(self, name: str) -> Optional[float]:
        return getattr(self, name)

    def present_fields(self) -> List[str]:
        """Reported statistic fields, in quantile order."""
        return [f for f in FIELD_ORDER if getattr(self, f) is not None]

    def restrict(self, scenario: Union[Scenario, str]) -> "SummaryStats":
        """Drop statistics the scenario does not use."""
        keep = set(get_fields(scenario))
        values = {f: (getattr(self, f) if f in keep else None) for f in FIELD_ORDER}
        return SummaryStats(n=self.n, **values)

    def affine(self, scale: float, shift: float = 0.0) -> "SummaryStats":
        """Summary of scale * x + shift."""
        if not scale > 0:
            raise ValueError(f"scale must be positive, got {scale!r}")
        values = {}
        for f in FIELD_ORDER:
            v = getattr(self, f)
            values[f] = None if v is None else scale * v + shift
        return SummaryStats(n=self.n, **values)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in dc_fields(self)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SummaryStats":
        return cls(
            x_med=data["x_med"],
            n=int(data["n"]),
            x_min=data.get("x_min"),
            x_q1=data.get("x_q1"),
            x_q3=data.get("x_q3"),
            x_max=data.get("x_max"),
        )


@dataclass(frozen=True)
class SummaryVector:
    """The scenario's statistics in canonical order: S(D) or S(D*)."""
    values: Tuple[float, ...]
    scenario: Scenario = field(default=Scenario.S1)

    def __post_init__(self):
        names = get_fields(self.scenario)
        if len(self.values) != len(names):
            raise ValueError(
                f"{self.scenario.value} vectors have {len(names)} values, got {len(self.values)}"
            )
        for (lo_name, lo), (hi_name, hi) in zip(
            zip(names, self.values), zip(names[1:], self.values[1:])
        ):
            if lo > hi:
                raise OrderingViolation(lo_name, lo, hi_name, hi)

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


# =============================================================================
# OPERATIONS
# =============================================================================

def validate(stats: SummaryStats, scenario: Union[Scenario, str]) -> SummaryStats:
    """
    Check stats against a scenario.

    Returns:
        stats, unchanged

    Raises:
        MissingField, SampleSizeTooSmall, OrderingViolation
    """
    scenario = normalize_scenario(scenario)
    missing = [f for f in FIELD_ORDER
               if f in REQUIRED_FIELDS[scenario] and getattr(stats, f) is None]
    if missing:
        raise MissingField(missing, scenario.value)

    if stats.n is None or stats.n < 2:
        raise SampleSizeTooSmall(stats.n)

    present = [(f, getattr(stats, f)) for f in stats.present_fields()]
    for name, value in present:
        if not math.isfinite(value):
            raise OrderingViolation(name, value, name, value)
    for (lo_name, lo), (hi_name, hi) in zip(present, present[1:]):
        if lo > hi:
            raise OrderingViolation(lo_name, lo, hi_name, hi)

    return stats


def detect_scenario(stats: SummaryStats) -> Scenario:
    """Pick the richest scenario whose fields are all reported."""
    present = set(stats.present_fields())
    for scenario in DETECTION_ORDER:
        if REQUIRED_FIELDS[scenario] <= present:
            return scenario
    needed = [f for f in FIELD_ORDER if f not in present and f != "x_med"]
    raise MissingField(needed or ["x_med"])


def to_vector(stats: SummaryStats, scenario: Union[Scenario, str]) -> SummaryVector:
    scenario = normalize_scenario(scenario)
    names = get_fields(scenario)
    missing = [f for f in names if getattr(stats, f) is None]
    if missing:
        raise MissingField(missing, scenario.value)
    return SummaryVector(
        values=tuple(float(getattr(stats, f)) for f in names),
        scenario=scenario,
    )


def summarize_batch(
    data: np.ndarray,
    scenario: Union[Scenario, str],
    quantile_rule: Union[QuantileRule, str] = QuantileRule.LINEAR,
) -> np.ndarray:
    """
    Summary vectors for many samples at once.

    Args:
        data: array of shape (m, n), one sample per row
        scenario: which statistics to compute
        quantile_rule: convention for median and quartiles

    Returns:
        array of shape (m, k) in the scenario's canonical order
    """
    scenario = normalize_scenario(scenario)
    rule = normalize_quantile_rule(quantile_rule)
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[np.newaxis, :]

    names = get_fields(scenario)
    inner = [f for f in names if f not in ("x_min", "x_max")]
    columns: Dict[str, np.ndarray] = {}

    with np.errstate(invalid="ignore", over="ignore"):
        if "x_min" in names:
            columns["x_min"] = data.min(axis=1)
        if "x_max" in names:
            columns["x_max"] = data.max(axis=1)
        if inner:
            probs = [FIELD_PROBS[f] for f in inner]
            q = np.quantile(data, probs, axis=1, method=rule.numpy_method)
            for i, name in enumerate(inner):
                columns[name] = q[i]

    return np.column_stack([columns[f] for f in names])


def summarize_sample(
    sample: Sequence[float],
    scenario: Union[Scenario, str],
    quantile_rule: Union[QuantileRule, str] = QuantileRule.LINEAR,
) -> SummaryStats:
    """Reduce a raw sample to the statistics the scenario reports."""
    scenario = normalize_scenario(scenario)
    arr = np.asarray(sample, dtype=float).ravel()
    if arr.size == 0:
        raise EmptySample()
    if arr.size < 2:
        raise SampleSizeTooSmall(int(arr.size))

    row = summarize_batch(arr, scenario, quantile_rule)[0]
    values = {name: float(v) for name, v in zip(get_fields(scenario), row)}
    return SummaryStats(n=int(arr.size), **values)
