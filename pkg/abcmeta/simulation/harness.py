"""
Simulation studies: how well does each method recover a sample's mean/SD?

A trial draws one sample, reduces it to a summary and lets every method
estimate from that summary alone. The relative errors are measured against
the sample's own mean and SD. Replicate r of sample size n always uses the
stream derive(master_seed, n, r), so any cell can be recomputed alone.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
from joblib import Parallel, delayed

from ..abc.engine import AbcConfig, abc_run
from ..abc.selection import candidate_labels, select_distribution
from ..config.defaults import (
    DEFAULT_MASTER_SEED,
    STUDY_N_GRID,
    STUDY_N_ITER,
    STUDY_REPLICATES,
)
from ..core.errors import AbcMetaError, ConfigError, RowError
from ..core.scenario import Scenario, normalize_scenario
from ..core.summary import SummaryStats, summarize_sample
from ..distributions.families import DistributionSpec, Family, normalize_family, sample
from ..distributions.rng import SeedLike, child_sequence, derive, fresh_seed, make_rng
from ..estimators.closed_form import (
    Estimate,
    Method,
    closed_form_estimate,
    is_valid_for,
    normalize_method,
)


logger = logging.getLogger(__name__)

# child keys under a trial's root stream
SAMPLE_KEY = 0
ABC_KEY = 1
CANDIDATE_KEY = 2


def _study_abc() -> AbcConfig:
    return AbcConfig(n_iter=STUDY_N_ITER)


# =============================================================================
# CONFIGURATION
# =============================================================================

@dataclass(frozen=True)
class ExperimentConfig:
    """One distribution under one scenario, over a grid of sample sizes."""
    distribution: DistributionSpec
    scenario: Scenario
    methods: Tuple[Method, ...]
    n_grid: Tuple[int, ...] = tuple(STUDY_N_GRID)
    replicates: int = STUDY_REPLICATES
    abc: AbcConfig = field(default_factory=_study_abc)
    master_seed: int = DEFAULT_MASTER_SEED
    name: str = ""
    abc_family: Optional[Family] = None
    exact_bland: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scenario", normalize_scenario(self.scenario))
        object.__setattr__(self, "methods", tuple(normalize_method(m) for m in self.methods))
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if self.abc_family is not None:
            object.__setattr__(self, "abc_family", normalize_family(self.abc_family))

        if not self.methods:
            raise ConfigError("methods", "at least one method is required")
        for i, method in enumerate(self.methods):
            if not is_valid_for(method, self.scenario):
                raise ConfigError(
                    f"methods[{i}]",
                    f"{method.value} is not defined for scenario {self.scenario.value}",
                )
        if not self.n_grid:
            raise ConfigError("n_grid", "must not be empty")
        if any(n < 2 for n in self.n_grid):
            raise ConfigError("n_grid", "sample sizes must be at least 2")
        if list(self.n_grid) != sorted(self.n_grid):
            raise ConfigError("n_grid", "must be sorted ascending")
        if self.replicates < 1:
            raise ConfigError("replicates", f"must be >= 1, got {self.replicates}")

    @property
    def model_family(self) -> Family:
        return self.abc_family or self.distribution.family

    @property
    def label(self) -> str:
        return self.name or f"{self.distribution.label}/{self.scenario.value}"

    def with_grid(self, n_grid: Sequence[int]) -> "ExperimentConfig":
        return replace(self, n_grid=tuple(n_grid))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "distribution": self.distribution.to_dict(),
            "scenario": self.scenario.value,
            "methods": [m.value for m in self.methods],
            "n_grid": list(self.n_grid),
            "replicates": self.replicates,
            "abc": self.abc.to_dict(),
            "abc_family": None if self.abc_family is None else self.abc_family.value,
            "exact_bland": self.exact_bland,
            "master_seed": self.master_seed,
        }


@dataclass(frozen=True)
class AreRecord:
    """Average relative errors of one method at one sample size."""
    method: Method
    n: int
    are_mean: float
    are_sd: float
    se_mean: float
    se_sd: float
    replicates: int
    distribution: str = ""
    scenario: Scenario = Scenario.S1
    failures: int = 0
    excluded: int = 0

    def to_row(self) -> dict:
        return {
            "method": self.method.value,
            "distribution": self.distribution,
            "scenario": self.scenario.value,
            "n": self.n,
            "are_mean": self.are_mean,
            "are_sd": self.are_sd,
            "se_mean": self.se_mean,
            "se_sd": self.se_sd,
            "replicates": self.replicates,
            "failures": self.failures,
            "excluded": self.excluded,
        }


@dataclass(frozen=True)
class TrialOutcome:
    """One method's relative errors in one trial, or why it failed."""
    method: Method
    re_mean: Optional[float] = None
    re_sd: Optional[float] = None
    error: Optional[RowError] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class TrialResult:
    truth_mean: float
    truth_sd: float
    outcomes: Dict[Method, TrialOutcome]

    @property
    def excluded(self) -> bool:
        """Relative errors are undefined against a zero mean or SD."""
        return self.truth_sd == 0.0 or self.truth_mean == 0.0


# =============================================================================
# TRIALS
# =============================================================================

def relative_error(estimate: float, truth: float) -> float:
    """(estimate - truth) / truth."""
    if truth == 0:
        raise ZeroDivisionError("relative error against a zero truth value")
    return (estimate - truth) / truth


def estimate_with(
    method: Method,
    stats: SummaryStats,
    scenario: Scenario,
    abc: AbcConfig,
    family: Family,
    rng: SeedLike,
    exact_bland: bool = False,
) -> Estimate:
    if method is Method.ABC:
        return abc_run(stats, scenario, family, config=abc, rng=rng).estimate
    return closed_form_estimate(method, stats, scenario, exact_bland=exact_bland)


def run_trial(
    spec: DistributionSpec,
    n: int,
    scenario: Union[Scenario, str],
    methods: Sequence[Union[Method, str]],
    abc: Optional[AbcConfig] = None,
    rng: Optional[SeedLike] = None,
    abc_family: Optional[Family] = None,
    exact_bland: bool = False,
) -> TrialResult:
    """
    One simulated study.

    The sample comes from child stream 0 of rng and ABC from child stream 1,
    so the method list never changes what any single method sees.
    """
    scenario = normalize_scenario(scenario)
    abc = abc or _study_abc()
    if rng is None:
        rng = fresh_seed()
    family = normalize_family(abc_family) if abc_family else spec.family

    data = sample(spec, n, make_rng(child_sequence(rng, SAMPLE_KEY)))
    truth_mean = float(np.mean(data))
    truth_sd = float(np.std(data, ddof=1))
    stats = summarize_sample(data, scenario, abc.quantile_rule)

    outcomes: Dict[Method, TrialOutcome] = {}
    if truth_sd == 0.0 or truth_mean == 0.0:
        return TrialResult(truth_mean, truth_sd, outcomes)

    for method in (normalize_method(m) for m in methods):
        try:
            est = estimate_with(
                method, stats, scenario, abc, family,
                child_sequence(rng, ABC_KEY), exact_bland,
            )
        except AbcMetaError as e:
            outcomes[method] = TrialOutcome(
                method=method,
                error=RowError.from_exception(spec.label, method.value, e),
            )
            continue
        outcomes[method] = TrialOutcome(
            method=method,
            re_mean=relative_error(est.mean, truth_mean),
            re_sd=relative_error(est.sd, truth_sd),
        )
    return TrialResult(truth_mean, truth_sd, outcomes)


def _run_cell(config: ExperimentConfig, n: int, replicate: int) -> TrialResult:
    return run_trial(
        config.distribution,
        n,
        config.scenario,
        config.methods,
        abc=config.abc,
        rng=derive(config.master_seed, n, replicate),
        abc_family=config.model_family,
        exact_bland=config.exact_bland,
    )


def _mean_and_se(values: List[float]) -> Tuple[float, float]:
    if not values:
        return math.nan, math.nan
    arr = np.asarray(values, dtype=float)
    if arr.size == 1:
        return float(arr[0]), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(arr.size))


def aggregate(config: ExperimentConfig, n: int, trials: Sequence[TrialResult]) -> List[AreRecord]:
    """AreRecords for one sample size, in method order."""
    excluded = sum(1 for t in trials if t.excluded)
    if excluded:
        logger.info(f"{config.label} n={n}: {excluded} trial(s) excluded for zero mean or SD")

    records = []
    for method in config.methods:
        outcomes = [t.outcomes[method] for t in trials if not t.excluded]
        good = [o for o in outcomes if o.ok]
        failures = len(outcomes) - len(good)
        if failures:
            codes = sorted({o.error.code for o in outcomes if not o.ok})
            logger.warning(f"{config.label} n={n} {method.value}: {failures} failed ({', '.join(codes)})")
        are_mean, se_mean = _mean_and_se([o.re_mean for o in good])
        are_sd, se_sd = _mean_and_se([o.re_sd for o in good])
        records.append(AreRecord(
            method=method,
            n=n,
            are_mean=are_mean,
            are_sd=are_sd,
            se_mean=se_mean,
            se_sd=se_sd,
            replicates=config.replicates,
            distribution=config.distribution.label,
            scenario=config.scenario,
            failures=failures,
            excluded=excluded,
        ))
    return records


def run_cell(config: ExperimentConfig, n: int) -> List[AreRecord]:
    """Records for a single sample size, identical to that slice of run_experiment."""
    trials = [_run_cell(config, n, r) for r in range(config.replicates)]
    return aggregate(config, n, trials)


def run_experiment(config: ExperimentConfig, n_jobs: int = 1) -> List[AreRecord]:
    """
    Run every (n, replicate) cell and average per method and n.

    Args:
        config: the experiment
        n_jobs: worker processes for the cells (-1 for all cores)

    Returns:
        AreRecords ordered by method, then n
    """
    cells = [(n, r) for n in config.n_grid for r in range(config.replicates)]
    logger.info(
        f"{config.label}: {len(config.methods)} method(s), {len(config.n_grid)} sample size(s), "
        f"{config.replicates} replicate(s)"
    )

    if n_jobs == 1:
        trials = [_run_cell(config, n, r) for n, r in cells]
    else:
        trials = Parallel(n_jobs=n_jobs)(delayed(_run_cell)(config, n, r) for n, r in cells)

    by_n: Dict[int, List[TrialResult]] = {n: [] for n in config.n_grid}
    for (n, _), trial in zip(cells, trials):
        by_n[n].append(trial)

    per_n = {n: aggregate(config, n, by_n[n]) for n in config.n_grid}
    return [
        per_n[n][i]
        for i in range(len(config.methods))
        for n in config.n_grid
    ]


# =============================================================================
# DISTRIBUTION SELECTION STUDY
# =============================================================================

@dataclass(frozen=True)
class SelectionExperimentConfig:
    """Repeated model choice on samples from a known distribution."""
    distribution: DistributionSpec
    n: int = 400
    scenario: Scenario = Scenario.S2
    candidates: Tuple[Family, ...] = (Family.BETA, Family.NORMAL)
    repeats: int = STUDY_REPLICATES
    abc: AbcConfig = field(default_factory=_study_abc)
    master_seed: int = DEFAULT_MASTER_SEED
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "scenario", normalize_scenario(self.scenario))
        object.__setattr__(self, "candidates", tuple(normalize_family(c) for c in self.candidates))
        if len(self.candidates) < 2:
            raise ConfigError("candidates", "model selection needs at least two candidates")
        if self.n < 2:
            raise ConfigError("n", f"must be >= 2, got {self.n}")
        if self.repeats < 1:
            raise ConfigError("repeats", f"must be >= 1, got {self.repeats}")

    @property
    def label(self) -> str:
        return self.name or f"{self.distribution.label}/n={self.n}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "distribution": self.distribution.to_dict(),
            "n": self.n,
            "scenario": self.scenario.value,
            "candidates": [c.value for c in self.candidates],
            "repeats": self.repeats,
            "abc": self.abc.to_dict(),
            "master_seed": self.master_seed,
        }


@dataclass(frozen=True)
class SelectionSummary:
    """Per-candidate tallies over the repeats."""
    name: str
    labels: Tuple[str, ...]
    chosen_counts: Tuple[int, ...]
    mean_posterior: Tuple[float, ...]
    are_mean: Tuple[float, ...]
    are_sd: Tuple[float, ...]
    repeats: int
    failures: int = 0

    @property
    def chosen_rates(self) -> Tuple[float, ...]:
        done = sum(self.chosen_counts)
        return tuple(c / done if done else math.nan for c in self.chosen_counts)

    def rate(self, label: str) -> float:
        return self.chosen_rates[self.labels.index(label)]

    def posterior(self, label: str) -> float:
        return self.mean_posterior[self.labels.index(label)]

    def rows(self) -> List[dict]:
        return [
            {
                "experiment": self.name,
                "candidate": label,
                "chosen_count": self.chosen_counts[i],
                "chosen_rate": self.chosen_rates[i],
                "mean_posterior": self.mean_posterior[i],
                "are_mean": self.are_mean[i],
                "are_sd": self.are_sd[i],
                "repeats": self.repeats,
            }
            for i, label in enumerate(self.labels)
        ]


@dataclass(frozen=True)
class _SelectionRepeat:
    probs: Optional[Tuple[float, ...]]
    chosen: Optional[int]
    re_mean: Tuple[Optional[float], ...]
    re_sd: Tuple[Optional[float], ...]


def _run_selection_repeat(config: SelectionExperimentConfig, repeat: int) -> _SelectionRepeat:
    root = derive(config.master_seed, config.n, repeat)
    data = sample(config.distribution, config.n, make_rng(child_sequence(root, SAMPLE_KEY)))
    truth_mean = float(np.mean(data))
    truth_sd = float(np.std(data, ddof=1))
    stats = summarize_sample(data, config.scenario, config.abc.quantile_rule)

    probs, chosen = None, None
    try:
        result = select_distribution(
            stats, config.scenario, config.candidates,
            config=config.abc, rng=child_sequence(root, ABC_KEY),
        )
        probs = tuple(result.posterior_probs[label] for label in result.labels)
        chosen = result.labels.index(result.chosen_label)
    except AbcMetaError as e:
        logger.warning(f"{config.label} repeat {repeat}: selection failed ({e.code})")

    re_mean: List[Optional[float]] = []
    re_sd: List[Optional[float]] = []
    for c, family in enumerate(config.candidates):
        try:
            est = abc_run(
                stats, config.scenario, family,
                config=config.abc, rng=child_sequence(root, CANDIDATE_KEY, c),
            ).estimate
            re_mean.append(relative_error(est.mean, truth_mean))
            re_sd.append(relative_error(est.sd, truth_sd))
        except (AbcMetaError, ZeroDivisionError) as e:
            logger.warning(f"{config.label} repeat {repeat}: {family.value} estimate failed ({e})")
            re_mean.append(None)
            re_sd.append(None)
    return _SelectionRepeat(probs, chosen, tuple(re_mean), tuple(re_sd))


def run_selection_experiment(config: SelectionExperimentConfig, n_jobs: int = 1) -> SelectionSummary:
    """
    Repeat model choice on fresh samples and tally the outcome.

    Each repeat also runs single-family ABC for every candidate, giving the
    error a user would incur by committing to that family.
    """
    logger.info(f"{config.label}: {config.repeats} selection repeat(s) over {len(config.candidates)} candidates")
    if n_jobs == 1:
        repeats = [_run_selection_repeat(config, r) for r in range(config.repeats)]
    else:
        repeats = Parallel(n_jobs=n_jobs)(
            delayed(_run_selection_repeat)(config, r) for r in range(config.repeats)
        )

    k = len(config.candidates)
    counts = [0] * k
    for rep in repeats:
        if rep.chosen is not None:
            counts[rep.chosen] += 1
    done = [rep for rep in repeats if rep.probs is not None]

    def column_mean(values) -> float:
        kept = [v for v in values if v is not None]
        return float(np.mean(kept)) if kept else math.nan

    return SelectionSummary(
        name=config.label,
        labels=tuple(candidate_labels(config.candidates)),
        chosen_counts=tuple(counts),
        mean_posterior=tuple(column_mean([rep.probs[c] for rep in done]) for c in range(k)),
        are_mean=tuple(column_mean([rep.re_mean[c] for rep in repeats]) for c in range(k)),
        are_sd=tuple(column_mean([rep.re_sd[c] for rep in repeats]) for c in range(k)),
        repeats=config.repeats,
        failures=config.repeats - len(done),
    )
