"""
Configuration for abcmeta.

Defaults live in defaults.py; experiment files and bundled presets are
loaded through loader.py.
"""

from .defaults import (
    get_defaults,
    get_abc_defaults,
    get_experiment_defaults,
    get_selection_defaults,
    PRIOR_BOUNDS,
)
from .loader import (
    ExperimentFile,
    merge_experiment,
    validate_experiment_dict,
    build_experiment,
    build_selection_experiment,
    parse_experiment_data,
    load_experiment_file,
    list_presets,
    preset_path,
    load_preset,
)

__all__ = [
    "get_defaults",
    "get_abc_defaults",
    "get_experiment_defaults",
    "get_selection_defaults",
    "PRIOR_BOUNDS",
    "ExperimentFile",
    "merge_experiment",
    "validate_experiment_dict",
    "build_experiment",
    "build_selection_experiment",
    "parse_experiment_data",
    "load_experiment_file",
    "list_presets",
    "preset_path",
    "load_preset",
]
