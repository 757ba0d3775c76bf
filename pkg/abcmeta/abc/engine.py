"""
ABC rejection sampler.

One run:
1. draw theta* from the uniform priors
2. generate a pseudo dataset of size n from family(theta*)
3. summarise it with the observed scenario and quantile rule
4. keep theta* whose summary lies closest to the observed one

Iterations are processed in fixed-size blocks, each with its own derived
random stream, so results are identical for any number of worker threads.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
from joblib import Parallel, delayed

from ..config.defaults import (
    DEFAULT_ACCEPT_PCT,
    DEFAULT_BLOCK_SIZE,
    DEFAULT_N_ITER,
)
from ..core.errors import (
    ConfigError,
    IncompatibleSupport,
    LengthMismatch,
    NoAcceptedDraws,
)
from ..core.scenario import QuantileRule, Scenario, normalize_quantile_rule, normalize_scenario
from ..core.summary import SummaryStats, SummaryVector, summarize_batch, to_vector, validate
from ..distributions.families import (
    DistributionSpec,
    Family,
    POSITIVE_SUPPORT,
    moments,
    normalize_family,
    sample_batch,
)
from ..distributions.rng import SeedLike, child_sequence, fresh_seed, make_rng, make_seed_sequence
from ..estimators.closed_form import Estimate, Method
from .priors import PriorConfig, default_priors


logger = logging.getLogger(__name__)


class Estimator(str, Enum):
    """How accepted draws become a mean/SD estimate."""
    DIRECT = "direct"          # average accepted (mu, sigma); normal only
    PLUGIN = "plugin"          # moments at the averaged parameters
    SIMULATION = "simulation"  # average sample moments of fresh pseudo data


def normalize_estimator(value: Union[Estimator, str, None]) -> Optional[Estimator]:
    if value is None or isinstance(value, Estimator):
        return value
    key = str(value).strip().lower().replace("-", "")
    try:
        return Estimator(key)
    except ValueError:
        raise ValueError(f"Unknown estimator: {value!r}") from None


def default_estimator(family: Union[Family, str]) -> Estimator:
    return Estimator.DIRECT if normalize_family(family) is Family.NORMAL else Estimator.PLUGIN


# =============================================================================
# CONFIGURATION AND RESULTS
# =============================================================================

@dataclass(frozen=True)
class AbcConfig:
    """
    Sampler settings.

    Exactly one acceptance mode applies: epsilon when set, otherwise the
    percentile mode with accept_pct (default 0.1%).
    """
    n_iter: int = DEFAULT_N_ITER
    accept_pct: Optional[float] = None
    epsilon: Optional[float] = None
    estimator: Optional[Estimator] = None
    seed: Optional[int] = None
    quantile_rule: QuantileRule = QuantileRule.LINEAR
    scale_distance: bool = False  # epsilon relative to the observed range
    block_size: int = DEFAULT_BLOCK_SIZE
    n_jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "estimator", normalize_estimator(self.estimator))
        object.__setattr__(self, "quantile_rule", normalize_quantile_rule(self.quantile_rule))

        if not isinstance(self.n_iter, int) or self.n_iter < 1:
            raise ConfigError("abc.n_iter", f"must be a positive integer, got {self.n_iter!r}")
        if self.block_size < 1:
            raise ConfigError("abc.block_size", f"must be positive, got {self.block_size!r}")
        if self.n_jobs == 0 or self.n_jobs < -1:
            raise ConfigError("abc.n_jobs", f"must be >= 1 or -1, got {self.n_jobs!r}")

        if self.epsilon is not None:
            if self.accept_pct is not None:
                raise ConfigError("abc", "give either accept_pct or epsilon, not both")
            if not self.epsilon > 0:
                raise ConfigError("abc.epsilon", f"must be positive, got {self.epsilon!r}")
            return

        pct = self.percentile
        if not 0 < pct <= 100:
            raise ConfigError("abc.accept_pct", f"must lie in (0, 100], got {pct!r}")
        if self.n_keep < 1:
            raise ConfigError(
                "abc.accept_pct",
                f"{pct}% of {self.n_iter} iterations keeps no draw",
            )

    @property
    def uses_epsilon(self) -> bool:
        return self.epsilon is not None

    @property
    def percentile(self) -> float:
        return DEFAULT_ACCEPT_PCT if self.accept_pct is None else float(self.accept_pct)

    @property
    def n_keep(self) -> int:
        """Draws kept in percentile mode."""
        return int(math.floor(self.n_iter * self.percentile / 100.0 + 1e-9))

    def with_overrides(self, **changes) -> "AbcConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "n_iter": self.n_iter,
            "accept_pct": self.accept_pct,
            "epsilon": self.epsilon,
            "estimator": None if self.estimator is None else self.estimator.value,
            "seed": self.seed,
            "quantile_rule": self.quantile_rule.value,
            "scale_distance": self.scale_distance,
            "block_size": self.block_size,
            "n_jobs": self.n_jobs,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AbcConfig":
        defaults = cls()
        return cls(
            n_iter=int(data.get("n_iter", defaults.n_iter)),
            accept_pct=data.get("accept_pct"),
            epsilon=data.get("epsilon"),
            estimator=data.get("estimator"),
            seed=data.get("seed"),
            quantile_rule=data.get("quantile_rule", defaults.quantile_rule),
            scale_distance=bool(data.get("scale_distance", False)),
            block_size=int(data.get("block_size", defaults.block_size)),
            n_jobs=int(data.get("n_jobs", 1)),
        )


@dataclass(frozen=True)
class AcceptedDraw:
    spec: DistributionSpec
    distance: float


@dataclass(frozen=True)
class AbcResult:
    """Accepted draws and the estimate derived from them."""
    family: Family
    scenario: Scenario
    accepted: Tuple[AcceptedDraw, ...]
    estimate: Estimate
    n_accepted: int
    acceptance_threshold_used: float
    n_iter: int
    estimator: Estimator
    support: Optional[Tuple[float, float]] = None

    @property
    def parameter_means(self) -> Tuple[float, ...]:
        params = np.array([d.spec.params for d in self.accepted], dtype=float)
        return tuple(float(v) for v in params.mean(axis=0))

    @property
    def distances(self) -> List[float]:
        return [d.distance for d in self.accepted]

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "scenario": self.scenario.value,
            "estimate": self.estimate.to_dict(),
            "n_accepted": self.n_accepted,
            "acceptance_threshold_used": self.acceptance_threshold_used,
            "n_iter": self.n_iter,
            "estimator": self.estimator.value,
            "parameter_means": list(self.parameter_means),
        }


# =============================================================================
# DISTANCES AND ACCEPTANCE
# =============================================================================

def distance(a: Union[SummaryVector, Sequence[float]], b: Union[SummaryVector, Sequence[float]]) -> float:
    """Euclidean distance between two summary vectors."""
    va = a.as_array() if isinstance(a, SummaryVector) else np.asarray(a, dtype=float)
    vb = b.as_array() if isinstance(b, SummaryVector) else np.asarray(b, dtype=float)
    if va.shape != vb.shape:
        raise LengthMismatch(va.size, vb.size)
    return float(np.linalg.norm(va - vb))


def batch_distances(
    summaries: np.ndarray,
    observed: np.ndarray,
    scale: Optional[float] = None,
) -> np.ndarray:
    """Row-wise distances, divided by scale if given; non-finite rows get +inf."""
    if summaries.shape[1] != observed.shape[0]:
        raise LengthMismatch(summaries.shape[1], observed.shape[0])
    with np.errstate(invalid="ignore", over="ignore"):
        diff = summaries - observed
        if scale is not None:
            diff = diff / scale
        d = np.sqrt(np.sum(diff * diff, axis=1))
    return np.where(np.isfinite(d), d, np.inf)


def distance_scale(observed: np.ndarray) -> float:
    """
    The observed vector's range (1 when flat).

    Dividing every distance by it expresses epsilon relative to the spread
    of the data. Percentile acceptance ranks distances, so it is unchanged.
    """
    spread = float(observed.max() - observed.min())
    return spread if spread > 0 else 1.0


def select_accepted(distances: np.ndarray, k: int) -> np.ndarray:
    """
    Indices of the k smallest distances, returned in iteration order.

    Ties at the boundary go to the draw encountered first.
    """
    distances = np.asarray(distances, dtype=float)
    k = max(0, min(int(k), distances.size))
    order = np.argsort(distances, kind="stable")[:k]
    return np.sort(order)


def accept(distances: np.ndarray, config: AbcConfig) -> Tuple[np.ndarray, float]:
    """
    Apply the configured acceptance rule.

    Returns:
        (accepted indices in iteration order, threshold used)
    """
    if config.uses_epsilon:
        idx = np.flatnonzero(distances < config.epsilon)
        if idx.size == 0:
            raise NoAcceptedDraws(config.epsilon, distances.size, float(distances.min()))
        return idx, float(config.epsilon)

    idx = select_accepted(distances, config.n_keep)
    return idx, float(distances[idx].max())


# =============================================================================
# MODELS
# =============================================================================

@dataclass(frozen=True)
class ModelSetup:
    """A family with its prior and the map from its support to the data scale."""
    family: Family
    prior: PriorConfig
    lower: float = 0.0
    width: float = 1.0

    @property
    def rescaled(self) -> bool:
        return self.lower != 0.0 or self.width != 1.0

    def simulate(
        self,
        size: int,
        n: int,
        scenario: Scenario,
        rule: QuantileRule,
        rng: np.random.Generator,
    ) -> Tuple[np.ndarray, Optional[np.ndarray], np.ndarray]:
        """Prior draws and their pseudo summaries on the observed scale."""
        p1, p2 = self.prior.draw(size, rng)
        with np.errstate(invalid="ignore", over="ignore"):
            data = sample_batch(self.family, p1, p2, n, rng)
            summaries = summarize_batch(data, scenario, rule)
            if self.rescaled:
                summaries = self.lower + self.width * summaries
        return p1, p2, summaries

    def to_observed(self, mean: float, sd: float) -> Tuple[float, float]:
        return self.lower + self.width * mean, self.width * sd


def check_support(family: Family, stats: SummaryStats) -> None:
    values = [stats.get(f) for f in stats.present_fields()]
    if family is Family.BETA:
        if min(values) < 0.0 or max(values) > 1.0:
            raise IncompatibleSupport(
                family.value,
                "statistics fall outside [0, 1]; supply support bounds to rescale",
            )
    elif family in POSITIVE_SUPPORT and min(values) < 0.0:
        raise IncompatibleSupport(family.value, "negative statistics for a positive family")


def build_model(
    family: Union[Family, str],
    stats: SummaryStats,
    scenario: Scenario,
    prior: Optional[PriorConfig] = None,
    support: Optional[Tuple[float, float]] = None,
) -> ModelSetup:
    """Check the family against the observed summary and settle its prior."""
    family = normalize_family(family)
    lower, width = 0.0, 1.0
    model_stats = stats

    if support is not None:
        if family is Family.BETA:
            lower, upper = float(support[0]), float(support[1])
            width = upper - lower
            if not width > 0:
                raise ConfigError("support", f"need lower < upper, got {support!r}")
            model_stats = stats.affine(1.0 / width, -lower / width)
        else:
            logger.debug(f"Ignoring support bounds {support} for {family.value}")

    check_support(family, model_stats)

    if prior is None:
        prior = default_priors(family, model_stats, scenario)
    elif prior.family is not family:
        raise ConfigError(
            "prior.family",
            f"prior is for {prior.family.value}, model is {family.value}",
        )
    return ModelSetup(family=family, prior=prior, lower=lower, width=width)


def resolve_stream(config: AbcConfig, rng: Optional[SeedLike]) -> np.random.SeedSequence:
    if rng is not None:
        return make_seed_sequence(rng)
    if config.seed is not None:
        return make_seed_sequence(config.seed)
    seed = fresh_seed()
    logger.info(f"No seed given; using {seed}")
    return make_seed_sequence(seed)


def block_sizes(n_iter: int, block_size: int) -> List[int]:
    full, rest = divmod(n_iter, block_size)
    return [block_size] * full + ([rest] if rest else [])


def run_blocks(func, n_blocks: int, n_jobs: int) -> list:
    """Evaluate func(b) for every block, results in block order."""
    if n_jobs == 1 or n_blocks == 1:
        return [func(b) for b in range(n_blocks)]
    return Parallel(n_jobs=n_jobs, prefer="threads")(delayed(func)(b) for b in range(n_blocks))


# =============================================================================
# SAMPLER
# =============================================================================

def _estimate(
    model: ModelSetup,
    estimator: Estimator,
    p1: np.ndarray,
    p2: Optional[np.ndarray],
    n: int,
    scenario: Scenario,
    stream: np.random.SeedSequence,
) -> Estimate:
    if estimator is Estimator.DIRECT:
        mean, sd = float(p1.mean()), float(p2.mean())
    elif estimator is Estimator.PLUGIN:
        spec = DistributionSpec(
            family=model.family,
            p1=float(p1.mean()),
            p2=None if p2 is None else float(p2.mean()),
        )
        m = moments(spec)
        mean, sd = m.mean, m.sd
    else:
        rng = make_rng(child_sequence(stream, 1))
        with np.errstate(invalid="ignore", over="ignore"):
            data = sample_batch(model.family, p1, p2, n, rng)
            mean = float(data.mean(axis=1).mean())
            sd = float(data.std(axis=1, ddof=1).mean())

    mean, sd = model.to_observed(mean, sd)
    return Estimate(mean=mean, sd=sd, method=Method.ABC, scenario=scenario)


def abc_run(
    stats: SummaryStats,
    scenario: Union[Scenario, str],
    family: Union[Family, str],
    prior: Optional[PriorConfig] = None,
    config: Optional[AbcConfig] = None,
    rng: Optional[SeedLike] = None,
    support: Optional[Tuple[float, float]] = None,
) -> AbcResult:
    """
    Estimate mean and SD of a study from its summary by ABC rejection.

    Args:
        stats: observed summary statistics
        scenario: which statistics are compared
        family: model family for the pseudo data
        prior: uniform priors; default_priors(family, ...) when omitted
        config: sampler settings
        rng: root stream (seed or SeedSequence); config.seed when omitted
        support: (lower, upper) of the data scale, beta only

    Returns:
        AbcResult with the accepted draws and the estimate

    Raises:
        IncompatibleSupport, NoAcceptedDraws, ConfigError
    """
    config = config or AbcConfig()
    scenario = normalize_scenario(scenario)
    family = normalize_family(family)
    validate(stats, scenario)

    estimator = config.estimator or default_estimator(family)
    if estimator is Estimator.DIRECT and family is not Family.NORMAL:
        raise ConfigError("abc.estimator", "the direct estimator needs the normal family")

    model = build_model(family, stats, scenario, prior, support)
    stream = resolve_stream(config, rng)
    observed = to_vector(stats, scenario).as_array()
    scale = distance_scale(observed) if config.scale_distance else None
    n = stats.n
    sizes = block_sizes(config.n_iter, config.block_size)

    logger.debug(
        f"ABC {family.value}/{scenario.value}: N={config.n_iter}, n={n}, "
        f"{'epsilon=' + str(config.epsilon) if config.uses_epsilon else str(config.percentile) + '%'}"
    )

    def simulate_block(b: int):
        block_rng = make_rng(child_sequence(stream, 0, b))
        p1, p2, summaries = model.simulate(sizes[b], n, scenario, config.quantile_rule, block_rng)
        return p1, p2, batch_distances(summaries, observed, scale)

    blocks = run_blocks(simulate_block, len(sizes), config.n_jobs)
    p1 = np.concatenate([blk[0] for blk in blocks])
    p2 = None if blocks[0][1] is None else np.concatenate([blk[1] for blk in blocks])
    distances = np.concatenate([blk[2] for blk in blocks])

    idx, threshold = accept(distances, config)
    acc_p1 = p1[idx]
    acc_p2 = None if p2 is None else p2[idx]
    logger.debug(f"Accepted {idx.size} of {config.n_iter} draws, threshold {threshold:.6g}")

    estimate = _estimate(model, estimator, acc_p1, acc_p2, n, scenario, stream)
    accepted = tuple(
        AcceptedDraw(
            spec=DistributionSpec(
                family=family,
                p1=float(acc_p1[i]),
                p2=None if acc_p2 is None else float(acc_p2[i]),
            ),
            distance=float(distances[j]),
        )
        for i, j in enumerate(idx)
    )

    return AbcResult(
        family=family,
        scenario=scenario,
        accepted=accepted,
        estimate=estimate,
        n_accepted=len(accepted),
        acceptance_threshold_used=threshold,
        n_iter=config.n_iter,
        estimator=estimator,
        support=None if not model.rescaled else (model.lower, model.lower + model.width),
    )
