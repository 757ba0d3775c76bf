"""Default configuration for abcmeta.

Every tunable default lives here. Experiment config files and CLI flags
override these values; they never need to restate them.
"""

from typing import Any, Dict, List


# =============================================================================
# ABC SAMPLER
# =============================================================================

# Recommended for real studies; the bundled simulation studies use STUDY_N_ITER
DEFAULT_N_ITER = 50_000
STUDY_N_ITER = 20_000

# Percent of draws kept (0.1% of 20,000 keeps 20 draws)
DEFAULT_ACCEPT_PCT = 0.1

# Iterations per independently seeded block
DEFAULT_BLOCK_SIZE = 1_000

DEFAULT_QUANTILE_RULE = "linear"


# =============================================================================
# PRIORS
# =============================================================================

# Uniform prior bounds per family. For normal and log-normal the location
# prior comes from the observed statistics, so only p2 is listed.
PRIOR_BOUNDS: Dict[str, Dict[str, Any]] = {
    "normal": {"p2": (0.0, 50.0)},
    "lognormal": {"p2": (0.0, 10.0)},
    "exponential": {"p1": (0.0, 40.0), "p2": None},
    "beta": {"p1": (0.0, 40.0), "p2": (0.0, 40.0)},
    "weibull": {"p1": (0.0, 50.0), "p2": (0.0, 50.0)},
}


# =============================================================================
# SIMULATION STUDIES
# =============================================================================

STUDY_N_GRID: List[int] = [10, 40, 80, 100, 150, 200, 300, 400, 500, 600]
STUDY_REPLICATES = 200
DEFAULT_MASTER_SEED = 20160101

DEFAULT_METHODS_BY_SCENARIO: Dict[str, List[str]] = {
    "S1": ["hozo", "wan", "abc"],
    "S2": ["bland", "wan", "abc"],
    "S3": ["wan", "abc"],
}


# =============================================================================
# CLI
# =============================================================================

# Process exit codes
EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CONFIG = 4
EXIT_ALL_FAILED = 5

FLOAT_FORMAT = ".17g"


# =============================================================================
# PUBLIC API
# =============================================================================

def get_abc_defaults() -> Dict[str, Any]:
    """
    Default ABC settings as a fresh dict.

    accept_pct is None here; AbcConfig reads None as DEFAULT_ACCEPT_PCT,
    which leaves room for a user epsilon.
    """
    return {
        "n_iter": DEFAULT_N_ITER,
        "accept_pct": None,
        "epsilon": None,
        "estimator": None,
        "seed": None,
        "quantile_rule": DEFAULT_QUANTILE_RULE,
        "scale_distance": False,
        "block_size": DEFAULT_BLOCK_SIZE,
        "n_jobs": 1,
    }


def get_experiment_defaults(scenario: str = "S1") -> Dict[str, Any]:
    """
    Defaults for one simulation experiment.

    Args:
        scenario: decides the default method list

    Returns:
        Dict with every ExperimentConfig field except the distribution.
    """
    abc = get_abc_defaults()
    abc["n_iter"] = STUDY_N_ITER
    return {
        "name": "",
        "scenario": scenario,
        "methods": list(DEFAULT_METHODS_BY_SCENARIO.get(scenario.upper(), ["wan", "abc"])),
        "n_grid": list(STUDY_N_GRID),
        "replicates": STUDY_REPLICATES,
        "abc": abc,
        "abc_family": None,
        "exact_bland": False,
        "master_seed": DEFAULT_MASTER_SEED,
    }


def get_selection_defaults() -> Dict[str, Any]:
    abc = get_abc_defaults()
    abc["n_iter"] = STUDY_N_ITER
    return {
        "name": "",
        "n": 400,
        "scenario": "S2",
        "candidates": ["beta", "normal"],
        "repeats": STUDY_REPLICATES,
        "abc": abc,
        "master_seed": DEFAULT_MASTER_SEED,
    }


def get_defaults(kind: str = "experiment", scenario: str = "S1") -> Dict[str, Any]:
    """
    Defaults for one kind of config object.

    Args:
        kind: 'abc', 'experiment' or 'selection'
        scenario: used by 'experiment' for its method list

    Returns:
        A fresh dict; callers may mutate it.
    """
    kind = kind.lower()
    if kind == "abc":
        return get_abc_defaults()
    if kind == "selection":
        return get_selection_defaults()
    if kind == "experiment":
        return get_experiment_defaults(scenario)
    raise ValueError(f"Unknown config kind: {kind!r}")
