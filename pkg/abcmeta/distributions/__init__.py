"""
Parametric families, special functions and random streams.
"""

from .families import (
    Family,
    PARAM_NAMES,
    POSITIVE_SUPPORT,
    Moments,
    DistributionSpec,
    normalize_family,
    n_params,
    sample,
    sample_batch,
    moments,
)

from .special import (
    normal_quantile,
    gamma_fn,
)

from .rng import (
    fresh_seed,
    make_seed_sequence,
    child_sequence,
    derive,
    make_rng,
)

__all__ = [
    # Families
    "Family",
    "PARAM_NAMES",
    "POSITIVE_SUPPORT",
    "Moments",
    "DistributionSpec",
    "normalize_family",
    "n_params",
    "sample",
    "sample_batch",
    "moments",
    # Special functions
    "normal_quantile",
    "gamma_fn",
    # Streams
    "fresh_seed",
    "make_seed_sequence",
    "child_sequence",
    "derive",
    "make_rng",
]
