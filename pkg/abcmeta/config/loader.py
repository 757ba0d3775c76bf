"""Experiment config loader that merges user files over the defaults.

A config file is JSON holding either one experiment object or
{"experiments": [...], "selection_experiments": [...]}. Each object is
schema-checked, merged over get_defaults() and converted to the typed
configs of abcmeta.simulation. The first problem is raised as a
ConfigError whose field is the dotted path inside the file.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..core.errors import AbcMetaError, ConfigError
from ..validation.validator import get_validator
from .defaults import get_experiment_defaults, get_selection_defaults


PRESETS_DIR = Path(__file__).parent / "presets"


@dataclass
class ExperimentFile:
    """Everything one config file asks to run."""
    experiments: List[Any] = field(default_factory=list)
    selection_experiments: List[Any] = field(default_factory=list)
    source: Optional[Path] = None

    @property
    def empty(self) -> bool:
        return not self.experiments and not self.selection_experiments


def _deep_copy_dict(d: Dict[str, Any]) -> Dict[str, Any]:
    result = {}
    for k, v in d.items():
        if isinstance(v, dict):
            result[k] = _deep_copy_dict(v)
        elif isinstance(v, list):
            result[k] = v.copy()
        else:
            result[k] = v
    return result


def merge_experiment(defaults: Dict[str, Any], user: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Merge a user experiment object over defaults.

    Merge rules:
    - abc: user keys OVERRIDE default keys one by one
    - epsilon given without accept_pct: accept_pct is cleared
    - everything else: user values OVERRIDE defaults

    Returns:
        A new dict; neither input is modified.
    """
    merged = _deep_copy_dict(defaults)
    if not user:
        return merged

    for key, value in user.items():
        if key == "abc" and isinstance(value, dict):
            abc = merged.get("abc", {})
            abc.update(value)
            if value.get("epsilon") is not None and "accept_pct" not in value:
                abc["accept_pct"] = None
            merged["abc"] = abc
        elif isinstance(value, dict):
            merged[key] = _deep_copy_dict(value)
        elif isinstance(value, list):
            merged[key] = value.copy()
        else:
            merged[key] = value
    return merged


def validate_experiment_dict(data: Dict[str, Any], selection: bool = False) -> List[str]:
    """
    Validate one experiment object without building it.

    Returns:
        List of error messages (empty if valid).
    """
    validator = get_validator()
    if selection:
        _, errors = validator.validate_selection_experiment(data)
    else:
        _, errors = validator.validate_experiment(data)
    return [str(e) for e in errors]


def _raise_first(errors) -> None:
    if errors:
        first = errors[0]
        raise ConfigError(first.path, first.message)


def _field_error(prefix: str, e: ConfigError) -> ConfigError:
    """Re-home a construction error under the object's path."""
    inner = e.field
    message = str(e)
    if inner and message.startswith(f"{inner}: "):
        message = message[len(inner) + 2:]
    return ConfigError(".".join(p for p in (prefix, inner) if p), message)


def _build_list(values, convert, path: str) -> tuple:
    out = []
    for i, value in enumerate(values):
        try:
            out.append(convert(value))
        except ValueError as e:
            raise ConfigError(f"{path}[{i}]", str(e)) from None
    return tuple(out)


def build_experiment(data: Dict[str, Any], prefix: str = ""):
    """Merge, validate and convert one experiment object."""
    from ..abc.engine import AbcConfig
    from ..distributions.families import DistributionSpec, normalize_family
    from ..estimators.closed_form import normalize_method
    from ..simulation.harness import ExperimentConfig

    _, errors = get_validator().validate_experiment(data, prefix)
    _raise_first(errors)

    merged = merge_experiment(get_experiment_defaults(str(data["scenario"])), data)
    at = (lambda name: f"{prefix}.{name}" if prefix else name)

    try:
        distribution = DistributionSpec.from_dict(merged["distribution"])
    except (AbcMetaError, ValueError) as e:
        raise ConfigError(at("distribution"), str(e)) from None
    methods = _build_list(merged["methods"], normalize_method, at("methods"))

    abc_family = merged.get("abc_family")
    if abc_family is not None:
        try:
            abc_family = normalize_family(abc_family)
        except ValueError as e:
            raise ConfigError(at("abc_family"), str(e)) from None

    try:
        return ExperimentConfig(
            distribution=distribution,
            scenario=merged["scenario"],
            methods=methods,
            n_grid=tuple(merged["n_grid"]),
            replicates=merged["replicates"],
            abc=AbcConfig.from_dict(merged["abc"]),
            master_seed=merged["master_seed"],
            name=merged.get("name", ""),
            abc_family=abc_family,
            exact_bland=merged.get("exact_bland", False),
        )
    except ConfigError as e:
        raise _field_error(prefix, e) from None
    except ValueError as e:
        raise ConfigError(at("abc"), str(e)) from None


def build_selection_experiment(data: Dict[str, Any], prefix: str = ""):
    """Merge, validate and convert one selection experiment object."""
    from ..abc.engine import AbcConfig
    from ..distributions.families import DistributionSpec, normalize_family
    from ..simulation.harness import SelectionExperimentConfig

    _, errors = get_validator().validate_selection_experiment(data, prefix)
    _raise_first(errors)

    merged = merge_experiment(get_selection_defaults(), data)
    at = (lambda name: f"{prefix}.{name}" if prefix else name)

    try:
        distribution = DistributionSpec.from_dict(merged["distribution"])
    except (AbcMetaError, ValueError) as e:
        raise ConfigError(at("distribution"), str(e)) from None
    candidates = _build_list(merged["candidates"], normalize_family, at("candidates"))

    try:
        return SelectionExperimentConfig(
            distribution=distribution,
            n=merged["n"],
            scenario=merged["scenario"],
            candidates=candidates,
            repeats=merged["repeats"],
            abc=AbcConfig.from_dict(merged["abc"]),
            master_seed=merged["master_seed"],
            name=merged.get("name", ""),
        )
    except ConfigError as e:
        raise _field_error(prefix, e) from None
    except ValueError as e:
        raise ConfigError(at("abc"), str(e)) from None


def parse_experiment_data(data: Any, source: Optional[Path] = None) -> ExperimentFile:
    """Convert an already-parsed config document."""
    if not isinstance(data, dict):
        raise ConfigError("root", "config must be a JSON object")

    if "experiments" not in data and "selection_experiments" not in data:
        return ExperimentFile(experiments=[build_experiment(data)], source=source)

    _, errors = get_validator().validate(data, "experiment_file")
    _raise_first(errors)

    result = ExperimentFile(source=source)
    for i, item in enumerate(data.get("experiments", [])):
        result.experiments.append(build_experiment(item, f"experiments[{i}]"))
    for i, item in enumerate(data.get("selection_experiments", [])):
        result.selection_experiments.append(
            build_selection_experiment(item, f"selection_experiments[{i}]")
        )
    if result.empty:
        raise ConfigError("experiments", "config file defines no experiments")
    return result


def load_experiment_file(path: Union[str, Path]) -> ExperimentFile:
    """
    Load and convert an experiment config file.

    Raises:
        ConfigError: unreadable file, invalid JSON or an invalid value
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError("", f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ConfigError("", f"{path} is not valid JSON (line {e.lineno}): {e.msg}") from None
    return parse_experiment_data(data, source=path)


def list_presets() -> List[str]:
    """Names of the bundled experiment configs."""
    return sorted(p.stem for p in PRESETS_DIR.glob("*.json"))


def preset_path(name: str) -> Path:
    path = PRESETS_DIR / f"{name}.json"
    if not path.exists():
        raise ConfigError("preset", f"unknown preset {name!r}; available: {', '.join(list_presets())}")
    return path


def load_preset(name: str) -> ExperimentFile:
    return load_experiment_file(preset_path(name))
