"""
Parametric families used to generate data and as ABC models.

Parameter conventions (p1, p2):
    normal       (mu, sigma)
    lognormal    (mu, sigma) of the underlying normal
    weibull      (shape kappa, scale lambda)
    beta         (alpha, beta)
    exponential  (mean,)      -- the mean, NOT the rate

The exponential is parameterised by its mean so that a Uniform(0, 40)
prior covers Exp(mean=10) data directly.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple, Union
import math

import numpy as np

from ..core.errors import InvalidParameters
from .special import gamma_fn


class Family(str, Enum):
    """Supported parametric families."""
    NORMAL = "normal"
    LOGNORMAL = "lognormal"
    WEIBULL = "weibull"
    BETA = "beta"
    EXPONENTIAL = "exponential"


PARAM_NAMES: Dict[Family, Tuple[str, ...]] = {
    Family.NORMAL: ("mu", "sigma"),
    Family.LOGNORMAL: ("mu", "sigma"),
    Family.WEIBULL: ("shape", "scale"),
    Family.BETA: ("alpha", "beta"),
    Family.EXPONENTIAL: ("mean",),
}

# Parameters that must be strictly positive, by position
POSITIVE_PARAMS: Dict[Family, Tuple[bool, ...]] = {
    Family.NORMAL: (False, True),
    Family.LOGNORMAL: (False, True),
    Family.WEIBULL: (True, True),
    Family.BETA: (True, True),
    Family.EXPONENTIAL: (True,),
}

# Families whose support is the positive half-line
POSITIVE_SUPPORT = frozenset({Family.LOGNORMAL, Family.WEIBULL, Family.EXPONENTIAL})

FAMILY_ALIASES: Dict[str, str] = {
    "gaussian": "normal",
    "log-normal": "lognormal",
    "lnorm": "lognormal",
    "exp": "exponential",
}


def normalize_family(value: Union[Family, str]) -> Family:
    if isinstance(value, Family):
        return value
    key = str(value).strip().lower()
    key = FAMILY_ALIASES.get(key, key)
    try:
        return Family(key)
    except ValueError:
        raise ValueError(f"Unknown family: {value!r}") from None


def n_params(family: Union[Family, str]) -> int:
    return len(PARAM_NAMES[normalize_family(family)])


@dataclass(frozen=True)
class Moments:
    """Mean and standard deviation of a distribution."""
    mean: float
    sd: float

    def __post_init__(self):
        if self.sd < 0:
            raise ValueError(f"sd must be non-negative, got {self.sd!r}")


@dataclass(frozen=True)
class DistributionSpec:
    """A family plus parameter values."""
    family: Family
    p1: float
    p2: Optional[float] = None

    def __post_init__(self):
        family = normalize_family(self.family)
        object.__setattr__(self, "family", family)
        _check_params(family, self.p1, self.p2)

    @property
    def params(self) -> Tuple[float, ...]:
        return (self.p1,) if self.p2 is None else (self.p1, self.p2)

    @property
    def label(self) -> str:
        return f"{self.family.value}({','.join(f'{p:g}' for p in self.params)})"

    def to_dict(self) -> dict:
        data = {"family": self.family.value, "p1": self.p1}
        if self.p2 is not None:
            data["p2"] = self.p2
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "DistributionSpec":
        return cls(
            family=normalize_family(data["family"]),
            p1=float(data["p1"]),
            p2=None if data.get("p2") is None else float(data["p2"]),
        )


def _check_params(family: Family, p1: float, p2: Optional[float]) -> None:
    expected = n_params(family)
    if expected == 1 and p2 is not None:
        raise InvalidParameters(family.value, "takes a single parameter")
    if expected == 2 and p2 is None:
        raise InvalidParameters(family.value, f"needs {', '.join(PARAM_NAMES[family])}")
    values = (p1,) if p2 is None else (p1, p2)
    for name, value, positive in zip(PARAM_NAMES[family], values, POSITIVE_PARAMS[family]):
        if not math.isfinite(value):
            raise InvalidParameters(family.value, f"{name}={value!r} is not finite")
        if positive and not value > 0:
            raise InvalidParameters(family.value, f"{name}={value!r} must be positive")


def _check_param_arrays(family: Family, p1: np.ndarray, p2: Optional[np.ndarray]) -> None:
    arrays = (p1,) if p2 is None else (p1, p2)
    if len(arrays) != n_params(family):
        raise InvalidParameters(family.value, f"needs {', '.join(PARAM_NAMES[family])}")
    for name, values, positive in zip(PARAM_NAMES[family], arrays, POSITIVE_PARAMS[family]):
        if not np.all(np.isfinite(values)):
            raise InvalidParameters(family.value, f"{name} has non-finite values")
        if positive and not np.all(values > 0):
            raise InvalidParameters(family.value, f"{name} must be positive")


# =============================================================================
# SAMPLING
# =============================================================================

def sample_batch(
    family: Union[Family, str],
    p1: np.ndarray,
    p2: Optional[np.ndarray],
    n: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    One sample of size n per parameter row.

    Returns:
        array of shape (len(p1), n)
    """
    family = normalize_family(family)
    p1 = np.atleast_1d(np.asarray(p1, dtype=float))
    p2 = None if p2 is None else np.atleast_1d(np.asarray(p2, dtype=float))
    _check_param_arrays(family, p1, p2)
    if n < 1:
        raise InvalidParameters(family.value, f"sample size must be positive, got {n}")

    size = (p1.shape[0], int(n))
    a = p1[:, np.newaxis]
    b = None if p2 is None else p2[:, np.newaxis]

    with np.errstate(over="ignore"):
        if family is Family.NORMAL:
            return rng.normal(loc=a, scale=b, size=size)
        if family is Family.LOGNORMAL:
            return rng.lognormal(mean=a, sigma=b, size=size)
        if family is Family.WEIBULL:
            return rng.weibull(a, size=size) * b
        if family is Family.BETA:
            return rng.beta(a, b, size=size)
        return rng.exponential(scale=a, size=size)


def sample(spec: DistributionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """n independent draws from spec."""
    p2 = None if spec.p2 is None else [spec.p2]
    return sample_batch(spec.family, [spec.p1], p2, n, rng)[0]


# =============================================================================
# MOMENTS
# =============================================================================

def moments(spec: DistributionSpec) -> Moments:
    """Closed-form mean and standard deviation."""
    family, p1, p2 = spec.family, spec.p1, spec.p2

    if family is Family.NORMAL:
        return Moments(mean=p1, sd=p2)

    if family is Family.LOGNORMAL:
        mean = math.exp(p1 + p2 * p2 / 2.0)
        return Moments(mean=mean, sd=mean * math.sqrt(math.expm1(p2 * p2)))

    if family is Family.WEIBULL:
        g1 = gamma_fn(1.0 + 1.0 / p1)
        g2 = gamma_fn(1.0 + 2.0 / p1)
        return Moments(mean=p2 * g1, sd=p2 * math.sqrt(max(g2 - g1 * g1, 0.0)))

    if family is Family.BETA:
        total = p1 + p2
        return Moments(
            mean=p1 / total,
            sd=math.sqrt(p1 * p2 / (total * total * (total + 1.0))),
        )

    return Moments(mean=p1, sd=p1)
