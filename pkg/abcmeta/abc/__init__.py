"""
ABC rejection sampling and model choice.
"""

from .priors import PriorConfig, default_priors
from .engine import (
    Estimator,
    AbcConfig,
    AcceptedDraw,
    AbcResult,
    normalize_estimator,
    default_estimator,
    distance,
    batch_distances,
    select_accepted,
    abc_run,
)
from .selection import (
    ModelSelectionResult,
    candidate_labels,
    posterior_from_counts,
    bayes_factor_value,
    select_distribution,
)

__all__ = [
    # Priors
    "PriorConfig",
    "default_priors",
    # Sampler
    "Estimator",
    "AbcConfig",
    "AcceptedDraw",
    "AbcResult",
    "normalize_estimator",
    "default_estimator",
    "distance",
    "batch_distances",
    "select_accepted",
    "abc_run",
    # Model choice
    "ModelSelectionResult",
    "candidate_labels",
    "posterior_from_counts",
    "bayes_factor_value",
    "select_distribution",
]
