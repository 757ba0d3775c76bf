"""
Distribution selection by ABC model choice.

Each iteration first picks a candidate uniformly (equal model priors),
then draws its parameters and pseudo data. Posterior model probabilities
are the candidates' shares of the accepted draws; Bayes factors are
ratios of those shares.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np

from ..core.errors import ConfigError, DegenerateSelection
from ..core.scenario import Scenario, normalize_scenario
from ..core.summary import SummaryStats, to_vector, validate
from ..distributions.families import Family, normalize_family
from ..distributions.rng import SeedLike, child_sequence, make_rng
from .engine import (
    AbcConfig,
    accept,
    batch_distances,
    block_sizes,
    build_model,
    distance_scale,
    resolve_stream,
    run_blocks,
)
from .priors import PriorConfig


logger = logging.getLogger(__name__)

Candidate = Union[Family, str, Tuple[Union[Family, str], Optional[PriorConfig]]]


@dataclass(frozen=True)
class ModelSelectionResult:
    """Posterior model probabilities from acceptance frequencies."""
    labels: Tuple[str, ...]
    families: Tuple[Family, ...]
    counts: Tuple[int, ...]
    posterior_probs: Dict[str, float]
    bayes_factors: Dict[Tuple[str, str], float]
    chosen: Family
    chosen_label: str
    n_accepted: int
    acceptance_threshold_used: float
    degenerate: bool = False

    def prob(self, family: Union[Family, str]) -> float:
        """Total posterior probability of every candidate of this family."""
        family = normalize_family(family)
        return sum(
            self.posterior_probs[label]
            for label, fam in zip(self.labels, self.families)
            if fam is family
        )

    def bayes_factor(self, first: str, second: str) -> float:
        return self.bayes_factors[(first, second)]

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "counts": list(self.counts),
            "posterior_probs": dict(self.posterior_probs),
            "chosen": self.chosen.value,
            "chosen_label": self.chosen_label,
            "n_accepted": self.n_accepted,
            "acceptance_threshold_used": self.acceptance_threshold_used,
            "degenerate": self.degenerate,
        }


def candidate_labels(families: Sequence[Family]) -> List[str]:
    """Family names, with #2, #3... appended to repeats."""
    seen: Dict[Family, int] = {}
    labels = []
    for family in families:
        seen[family] = seen.get(family, 0) + 1
        count = seen[family]
        labels.append(family.value if count == 1 else f"{family.value}#{count}")
    return labels


def posterior_from_counts(counts: Sequence[int]) -> List[float]:
    total = sum(counts)
    if total == 0:
        raise ValueError("no accepted draws")
    return [c / total for c in counts]


def bayes_factor_value(p_i: float, p_j: float) -> float:
    if p_j > 0:
        return p_i / p_j
    if p_i > 0:
        return math.inf
    return math.nan


def is_degenerate(
    distances: np.ndarray,
    models: np.ndarray,
    accepted: np.ndarray,
    threshold: float,
) -> bool:
    """All accepted draws sit at the threshold and the tie spans other candidates."""
    if not np.all(distances[accepted] == threshold):
        return False
    tied = np.flatnonzero(distances == threshold)
    if tied.size <= accepted.size:
        return False
    return bool(np.unique(models[tied]).size > 1)


def _split_candidate(candidate: Candidate) -> Tuple[Family, Optional[PriorConfig]]:
    if isinstance(candidate, tuple):
        family, prior = candidate
        return normalize_family(family), prior
    return normalize_family(candidate), None


def select_distribution(
    stats: SummaryStats,
    scenario: Union[Scenario, str],
    candidates: Sequence[Candidate],
    config: Optional[AbcConfig] = None,
    rng: Optional[SeedLike] = None,
    support: Optional[Tuple[float, float]] = None,
    strict: bool = False,
) -> ModelSelectionResult:
    """
    Choose among candidate families for one study.

    Args:
        stats: observed summary statistics
        scenario: which statistics are compared
        candidates: families, or (family, prior) pairs
        config: sampler settings shared by all candidates
        rng: root stream
        support: data-scale bounds for beta candidates
        strict: raise DegenerateSelection instead of reporting uniform
            probabilities when acceptance is decided by ties

    Raises:
        ConfigError: fewer than two candidates
        IncompatibleSupport, NoAcceptedDraws, DegenerateSelection
    """
    if len(candidates) < 2:
        raise ConfigError("candidates", "model selection needs at least two candidates")

    config = config or AbcConfig()
    scenario = normalize_scenario(scenario)
    validate(stats, scenario)

    setups = []
    for candidate in candidates:
        family, prior = _split_candidate(candidate)
        setups.append(build_model(family, stats, scenario, prior, support))
    families = tuple(s.family for s in setups)
    labels = tuple(candidate_labels(families))
    k_models = len(setups)

    stream = resolve_stream(config, rng)
    observed = to_vector(stats, scenario).as_array()
    scale = distance_scale(observed) if config.scale_distance else None
    n = stats.n
    sizes = block_sizes(config.n_iter, config.block_size)

    logger.debug(f"Model choice over {', '.join(labels)}: N={config.n_iter}, n={n}")

    def simulate_block(b: int):
        block_rng = make_rng(child_sequence(stream, 0, b))
        models = block_rng.integers(k_models, size=sizes[b])
        d = np.empty(sizes[b])
        for m, setup in enumerate(setups):
            rows = np.flatnonzero(models == m)
            if rows.size == 0:
                continue
            _, _, summaries = setup.simulate(rows.size, n, scenario, config.quantile_rule, block_rng)
            d[rows] = batch_distances(summaries, observed, scale)
        return models, d

    blocks = run_blocks(simulate_block, len(sizes), config.n_jobs)
    models = np.concatenate([blk[0] for blk in blocks])
    distances = np.concatenate([blk[1] for blk in blocks])

    idx, threshold = accept(distances, config)
    counts = tuple(int(c) for c in np.bincount(models[idx], minlength=k_models))

    degenerate = is_degenerate(distances, models, idx, threshold)
    if degenerate:
        if strict:
            raise DegenerateSelection(threshold)
        logger.warning(
            f"Accepted draws tie at distance {threshold:.6g} across candidates; "
            f"reporting uniform probabilities"
        )
        probs = [1.0 / k_models] * k_models
    else:
        probs = posterior_from_counts(counts)

    posterior = dict(zip(labels, probs))
    factors = {
        (labels[i], labels[j]): bayes_factor_value(probs[i], probs[j])
        for i in range(k_models)
        for j in range(k_models)
        if i != j
    }
    best = int(np.argmax(probs))

    return ModelSelectionResult(
        labels=labels,
        families=families,
        counts=counts,
        posterior_probs=posterior,
        bayes_factors=factors,
        chosen=families[best],
        chosen_label=labels[best],
        n_accepted=int(idx.size),
        acceptance_threshold_used=threshold,
        degenerate=degenerate,
    )
