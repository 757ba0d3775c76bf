"""
Closed-form mean/SD estimators from reported summary statistics.

Rules implemented:
- ad-hoc: median as mean, range/4 (S1) or IQR/1.35 (S3) as SD
- Hozo: piecewise in n, S1 only
- Bland: quartile-weighted moments, S2 only
- Wan: order-statistic SD under normality, S1/S2/S3

Hozo's small-sample variance uses (x_min - 2 x_med + x_max)^2, the form
that vanishes for symmetric summaries.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Union
import math

from ..core.errors import (
    DegenerateRange,
    NegativeVariance,
    UnsupportedScenario,
)
from ..core.scenario import Scenario, normalize_scenario
from ..core.summary import SummaryStats, validate
from ..distributions.special import normal_quantile


class Method(str, Enum):
    """Estimation methods."""
    ADHOC = "adhoc"
    HOZO = "hozo"
    BLAND = "bland"
    WAN = "wan"
    ABC = "abc"


VALID_SCENARIOS: Dict[Method, FrozenSet[Scenario]] = {
    Method.ADHOC: frozenset({Scenario.S1, Scenario.S3}),
    Method.HOZO: frozenset({Scenario.S1}),
    Method.BLAND: frozenset({Scenario.S2}),
    Method.WAN: frozenset({Scenario.S1, Scenario.S2, Scenario.S3}),
    Method.ABC: frozenset({Scenario.S1, Scenario.S2, Scenario.S3}),
}

CLOSED_FORM_METHODS = (Method.ADHOC, Method.HOZO, Method.BLAND, Method.WAN)

# Hozo branch limits
HOZO_MEAN_SMALL_N = 25
HOZO_VAR_SMALL_N = 15
HOZO_VAR_MEDIUM_N = 70

ADHOC_IQR_DIVISOR = 1.35

# Round-off allowance for Bland's variance, relative to its squared terms
BLAND_NEGATIVE_TOLERANCE = 1e-12


def normalize_method(value: Union[Method, str]) -> Method:
    if isinstance(value, Method):
        return value
    try:
        return Method(str(value).strip().lower())
    except ValueError:
        raise ValueError(f"Unknown method: {value!r}") from None


def is_valid_for(method: Union[Method, str], scenario: Union[Scenario, str]) -> bool:
    return normalize_scenario(scenario) in VALID_SCENARIOS[normalize_method(method)]


def methods_for_scenario(scenario: Union[Scenario, str]) -> List[Method]:
    scenario = normalize_scenario(scenario)
    return [m for m in Method if scenario in VALID_SCENARIOS[m]]


@dataclass(frozen=True)
class Estimate:
    """Estimated mean and SD with the method that produced them."""
    mean: float
    sd: float
    method: Method
    scenario: Scenario

    def __post_init__(self):
        if self.sd < 0:
            raise ValueError(f"sd must be non-negative, got {self.sd!r}")

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "sd": self.sd,
            "method": self.method.value,
            "scenario": self.scenario.value,
        }


def _require(method: Method, scenario: Scenario) -> None:
    if scenario not in VALID_SCENARIOS[method]:
        raise UnsupportedScenario(method.value, scenario.value)


# =============================================================================
# AD-HOC
# =============================================================================

def adhoc_estimate(stats: SummaryStats, scenario: Union[Scenario, str]) -> Estimate:
    scenario = normalize_scenario(scenario)
    _require(Method.ADHOC, scenario)
    validate(stats, scenario)

    if scenario is Scenario.S1:
        sd = (stats.x_max - stats.x_min) / 4.0
    else:
        sd = (stats.x_q3 - stats.x_q1) / ADHOC_IQR_DIVISOR
    return Estimate(mean=stats.x_med, sd=sd, method=Method.ADHOC, scenario=scenario)


# =============================================================================
# HOZO
# =============================================================================

def _hozo_mean(stats: SummaryStats) -> float:
    if stats.n <= HOZO_MEAN_SMALL_N:
        return (stats.x_min + 2.0 * stats.x_med + stats.x_max) / 4.0
    return stats.x_med


def hozo_estimate(stats: SummaryStats) -> Estimate:
    validate(stats, Scenario.S1)
    a, m, b, n = stats.x_min, stats.x_med, stats.x_max, stats.n
    spread = b - a

    if n <= HOZO_VAR_SMALL_N:
        variance = ((a - 2.0 * m + b) ** 2 / 4.0 + spread ** 2) / 12.0
    elif n <= HOZO_VAR_MEDIUM_N:
        variance = (spread / 4.0) ** 2
    else:
        variance = (spread / 6.0) ** 2

    return Estimate(
        mean=_hozo_mean(stats),
        sd=math.sqrt(variance),
        method=Method.HOZO,
        scenario=Scenario.S1,
    )


# =============================================================================
# BLAND
# =============================================================================

def _bland_mean(stats: SummaryStats, exact: bool = False) -> float:
    a, q1, m, q3, b = stats.x_min, stats.x_q1, stats.x_med, stats.x_q3, stats.x_max
    if exact:
        n = stats.n
        return ((n + 3) * a + 2 * (n - 1) * (q1 + m + q3) + (n + 3) * b) / (8.0 * n)
    return (a + 2.0 * q1 + 2.0 * m + 2.0 * q3 + b) / 8.0


def bland_estimate(stats: SummaryStats, exact: bool = False) -> Estimate:
    """
    Bland's S2 estimator.

    The default is the sample-size-free approximation. exact=True evaluates
    the n-dependent form (experimental); both agree as n grows.

    Raises:
        MissingField: an S2 statistic is absent
        SampleSizeTooSmall, OrderingViolation: stats fail validate()
        NegativeVariance: the variance formula went below zero
    """
    validate(stats, Scenario.S2)
    a, q1, m, q3, b = stats.x_min, stats.x_q1, stats.x_med, stats.x_q3, stats.x_max
    squares = a * a + 2.0 * q1 * q1 + 2.0 * m * m + 2.0 * q3 * q3 + b * b
    cross = q1 * (a + m) + q3 * (m + b)
    mean = _bland_mean(stats, exact)

    if exact:
        n = stats.n
        second = ((n + 3) * squares + 8.0 * (a * a + b * b) + 2.0 * (n - 5) * cross) / (16.0 * n)
    else:
        second = squares / 16.0 + cross / 8.0
    variance = second - mean * mean

    if variance < 0:
        scale = squares / 8.0
        if -variance > BLAND_NEGATIVE_TOLERANCE * max(scale, 1.0):
            raise NegativeVariance(Method.BLAND.value, variance)
        variance = 0.0

    return Estimate(
        mean=mean,
        sd=math.sqrt(variance),
        method=Method.BLAND,
        scenario=Scenario.S2,
    )


# =============================================================================
# WAN
# =============================================================================

def _range_divisor(n: int) -> float:
    p = (n - 0.375) / (n + 0.25)
    if p <= 0.5:
        raise DegenerateRange(n, p)
    return 2.0 * normal_quantile(p)


def _iqr_divisor(n: int) -> float:
    p = (0.75 * n - 0.125) / (n + 0.25)
    if p <= 0.5:
        raise DegenerateRange(n, p)
    return 2.0 * normal_quantile(p)


def wan_mean(stats: SummaryStats, scenario: Union[Scenario, str]) -> float:
    scenario = normalize_scenario(scenario)
    validate(stats, scenario)
    if scenario is Scenario.S1:
        return _hozo_mean(stats)
    if scenario is Scenario.S2:
        return _bland_mean(stats)
    return (stats.x_q1 + stats.x_med + stats.x_q3) / 3.0


def wan_sd(stats: SummaryStats, scenario: Union[Scenario, str]) -> float:
    scenario = normalize_scenario(scenario)
    validate(stats, scenario)
    n = stats.n

    if scenario is Scenario.S1:
        return (stats.x_max - stats.x_min) / _range_divisor(n)
    if scenario is Scenario.S3:
        return (stats.x_q3 - stats.x_q1) / _iqr_divisor(n)

    from_range = (stats.x_max - stats.x_min) / _range_divisor(n)
    from_iqr = (stats.x_q3 - stats.x_q1) / _iqr_divisor(n)
    return (from_range + from_iqr) / 2.0


def wan_estimate(stats: SummaryStats, scenario: Union[Scenario, str]) -> Estimate:
    scenario = normalize_scenario(scenario)
    return Estimate(
        mean=wan_mean(stats, scenario),
        sd=wan_sd(stats, scenario),
        method=Method.WAN,
        scenario=scenario,
    )


# =============================================================================
# DISPATCH
# =============================================================================

def closed_form_estimate(
    method: Union[Method, str],
    stats: SummaryStats,
    scenario: Union[Scenario, str],
    exact_bland: bool = False,
) -> Estimate:
    """
    Run a closed-form method.

    Raises:
        UnsupportedScenario: the method is not defined for the scenario
        MissingField, SampleSizeTooSmall, OrderingViolation: stats fail validate()
        ValueError: method is ABC (use abcmeta.abc.abc_run)
    """
    method = normalize_method(method)
    scenario = normalize_scenario(scenario)
    if method is Method.ABC:
        raise ValueError("ABC is not a closed-form method")
    _require(method, scenario)
    validate(stats, scenario)

    if method is Method.ADHOC:
        return adhoc_estimate(stats, scenario)
    if method is Method.HOZO:
        return hozo_estimate(stats)
    if method is Method.BLAND:
        return bland_estimate(stats, exact=exact_bland)
    return wan_estimate(stats, scenario)
