"""
Uniform priors for the ABC sampler.

default_priors reproduces the bounds used by the bundled simulation
studies; any PriorConfig can be supplied instead.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union
import math

import numpy as np

from ..config.defaults import PRIOR_BOUNDS
from ..core.errors import ConfigError, NonPositiveSupport
from ..core.scenario import Scenario, normalize_scenario
from ..core.summary import SummaryStats, to_vector
from ..distributions.families import (
    Family,
    POSITIVE_PARAMS,
    n_params,
    normalize_family,
)


Bounds = Tuple[float, float]


@dataclass(frozen=True)
class PriorConfig:
    """Independent Uniform(lower, upper) priors on p1 and p2."""
    family: Family
    bounds_p1: Bounds
    bounds_p2: Optional[Bounds] = None

    def __post_init__(self):
        family = normalize_family(self.family)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "bounds_p1", _as_bounds(self.bounds_p1))
        if self.bounds_p2 is not None:
            object.__setattr__(self, "bounds_p2", _as_bounds(self.bounds_p2))

        if (self.bounds_p2 is None) != (n_params(family) == 1):
            raise ConfigError(
                "prior.bounds_p2",
                f"{family.value} takes {n_params(family)} parameter(s)",
            )
        all_bounds = [self.bounds_p1] + ([self.bounds_p2] if self.bounds_p2 else [])
        for i, ((lo, hi), positive) in enumerate(zip(all_bounds, POSITIVE_PARAMS[family]), 1):
            if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
                raise ConfigError(f"prior.bounds_p{i}", f"need lower < upper, got ({lo}, {hi})")
            if positive and lo < 0:
                raise ConfigError(f"prior.bounds_p{i}", f"lower bound {lo} must be >= 0")

    @property
    def midpoints(self) -> Tuple[float, ...]:
        return tuple((lo + hi) / 2.0 for lo, hi in self.all_bounds)

    @property
    def all_bounds(self) -> Tuple[Bounds, ...]:
        if self.bounds_p2 is None:
            return (self.bounds_p1,)
        return (self.bounds_p1, self.bounds_p2)

    def draw(self, size: int, rng: np.random.Generator) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        """Draw size parameter vectors; positive parameters never hit zero."""
        draws = []
        for (lo, hi), positive in zip(self.all_bounds, POSITIVE_PARAMS[self.family]):
            values = rng.uniform(lo, hi, size=size)
            if positive:
                values = np.maximum(values, np.finfo(float).tiny)
            draws.append(values)
        return draws[0], (draws[1] if len(draws) > 1 else None)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "bounds_p1": list(self.bounds_p1),
            "bounds_p2": None if self.bounds_p2 is None else list(self.bounds_p2),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PriorConfig":
        return cls(
            family=normalize_family(data["family"]),
            bounds_p1=tuple(data["bounds_p1"]),
            bounds_p2=None if data.get("bounds_p2") is None else tuple(data["bounds_p2"]),
        )


def _as_bounds(value) -> Bounds:
    lo, hi = value
    return (float(lo), float(hi))


def default_priors(
    family: Union[Family, str],
    stats: SummaryStats,
    scenario: Union[Scenario, str],
) -> PriorConfig:
    """
    Default prior bounds for a family given the observed summary.

    Location priors for normal and log-normal span (x_min, x_max) under S1
    and (x_q1, x_q3) otherwise, on the log scale for log-normal. Every other
    parameter gets Uniform(0, upper) from PRIOR_BOUNDS.

    Raises:
        NonPositiveSupport: log-normal with a non-positive bounding statistic
        MissingField: a bounding statistic is absent
    """
    family = normalize_family(family)
    scenario = normalize_scenario(scenario)
    to_vector(stats, scenario)
    table = PRIOR_BOUNDS[family.value]

    if family in (Family.NORMAL, Family.LOGNORMAL):
        if scenario is Scenario.S1:
            names = ("x_min", "x_max")
        else:
            names = ("x_q1", "x_q3")
        lo, hi = (stats.get(f) for f in names)
        if family is Family.LOGNORMAL:
            for name, value in zip(names, (lo, hi)):
                if not value > 0:
                    raise NonPositiveSupport(name, value)
            lo, hi = math.log(lo), math.log(hi)
        return PriorConfig(family=family, bounds_p1=(lo, hi), bounds_p2=tuple(table["p2"]))

    return PriorConfig(
        family=family,
        bounds_p1=tuple(table["p1"]),
        bounds_p2=None if table.get("p2") is None else tuple(table["p2"]),
    )
