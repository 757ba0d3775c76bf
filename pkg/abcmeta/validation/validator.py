"""
Schema validation for abcmeta input files.

Experiment configs and JSON study tables are checked against JSON schemas
before any conversion to typed objects, so structural mistakes are reported
with their path inside the document.
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import jsonschema


SCHEMA_DRAFT = "http://json-schema.org/draft-07/schema#"

_NUMBER_OR_NULL = {"type": ["number", "null"]}

ABC_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "n_iter": {"type": "integer", "minimum": 1},
        "accept_pct": {"type": ["number", "null"], "exclusiveMinimum": 0, "maximum": 100},
        "epsilon": {"type": ["number", "null"], "exclusiveMinimum": 0},
        "estimator": {"type": ["string", "null"]},
        "seed": {"type": ["integer", "null"], "minimum": 0},
        "quantile_rule": {"type": "string"},
        "scale_distance": {"type": "boolean"},
        "block_size": {"type": "integer", "minimum": 1},
        "n_jobs": {"type": "integer"},
    },
}

DISTRIBUTION_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["family", "p1"],
    "additionalProperties": False,
    "properties": {
        "family": {"type": "string", "minLength": 1},
        "p1": {"type": "number"},
        "p2": _NUMBER_OR_NULL,
    },
}

SCENARIO_SCHEMA: Dict[str, Any] = {"type": "string", "pattern": "^[sS][123]$"}


BUILTIN_SCHEMAS: Dict[str, Dict[str, Any]] = {
    "experiment": {
        "$schema": SCHEMA_DRAFT,
        "type": "object",
        "required": ["distribution", "scenario"],
        "additionalProperties": False,
        "properties": {
            "name": {"type": "string"},
            "distribution": DISTRIBUTION_SCHEMA,
            "scenario": SCENARIO_SCHEMA,
            "methods": {"type": "array", "minItems": 1, "items": {"type": "string"}},
            "n_grid": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 2}},
            "replicates": {"type": "integer", "minimum": 1},
            "abc": ABC_SCHEMA,
            "abc_family": {"type": ["string", "null"]},
            "exact_bland": {"type": "boolean"},
            "master_seed": {"type": "integer", "minimum": 0},
        },
    },
    "selection_experiment": {
        "$schema": SCHEMA_DRAFT,
        "type": "object",
        "required": ["distribution"],
        "additionalProperties": False,
        "properties": {
            "name": {"type": "string"},
            "distribution": DISTRIBUTION_SCHEMA,
            "n": {"type": "integer", "minimum": 2},
            "scenario": SCENARIO_SCHEMA,
            "candidates": {"type": "array", "minItems": 2, "items": {"type": "string"}},
            "repeats": {"type": "integer", "minimum": 1},
            "abc": ABC_SCHEMA,
            "master_seed": {"type": "integer", "minimum": 0},
        },
    },
    "experiment_file": {
        "$schema": SCHEMA_DRAFT,
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "experiments": {"type": "array", "items": {"type": "object"}},
            "selection_experiments": {"type": "array", "items": {"type": "object"}},
        },
    },
    "study_rows": {
        "$schema": SCHEMA_DRAFT,
        "type": "array",
        "items": {
            "type": "object",
            "required": ["study_id", "n"],
            "properties": {
                "study_id": {"type": ["string", "integer"]},
                "n": {"type": "integer"},
                "x_min": _NUMBER_OR_NULL,
                "x_q1": _NUMBER_OR_NULL,
                "x_med": _NUMBER_OR_NULL,
                "x_q3": _NUMBER_OR_NULL,
                "x_max": _NUMBER_OR_NULL,
                "family_hint": {"type": ["string", "null"]},
                "support_bounds": {
                    "type": ["array", "null"],
                    "items": {"type": "number"},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
    },
}


@dataclass(frozen=True)
class SchemaIssue:
    """One schema violation at a dotted location."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


Outcome = Tuple[bool, List[SchemaIssue]]


def join_path(prefix: str, parts: Iterable[Union[str, int]]) -> str:
    """Render a jsonschema path like experiments[0].abc.n_iter."""
    path = prefix
    for part in parts:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path = f"{path}.{part}" if path else str(part)
    return path or "root"


class Validator:
    """
    Checks documents against named JSON schemas.

    The table covers experiment configs and study tables.
    """

    def __init__(self):
        self._checkers: Dict[str, jsonschema.Draft7Validator] = {
            name: jsonschema.Draft7Validator(schema) for name, schema in BUILTIN_SCHEMAS.items()
        }

    def validate(self, data: Any, schema_name: str, prefix: str = "") -> Outcome:
        """
        Validate data against a schema.

        Args:
            data: The document to validate
            schema_name: Name of the schema to use
            prefix: Dotted path prepended to every reported location

        Returns:
            (is_valid, issues) with issues sorted by location
        """
        checker = self._checkers.get(schema_name)
        if checker is None:
            return False, [SchemaIssue("", f"Unknown schema: {schema_name}")]

        found = sorted(checker.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path])
        issues = [SchemaIssue(join_path(prefix, e.absolute_path), e.message) for e in found]
        return not issues, issues

    def validate_experiment(self, data: Dict[str, Any], prefix: str = "") -> Outcome:
        return self.validate(data, "experiment", prefix)

    def validate_selection_experiment(self, data: Dict[str, Any], prefix: str = "") -> Outcome:
        return self.validate(data, "selection_experiment", prefix)

    def validate_study_rows(self, rows: List[Dict[str, Any]]) -> Outcome:
        return self.validate(rows, "study_rows")

    def list_schemas(self) -> List[str]:
        return sorted(self._checkers)


_shared: Optional[Validator] = None


def get_validator() -> Validator:
    """Get the shared validator instance."""
    global _shared
    if _shared is None:
        _shared = Validator()
    return _shared


def validate_experiment(data: Dict[str, Any], prefix: str = "") -> Outcome:
    return get_validator().validate_experiment(data, prefix)


def validate_selection_experiment(data: Dict[str, Any], prefix: str = "") -> Outcome:
    return get_validator().validate_selection_experiment(data, prefix)


def validate_study_rows(rows: List[Dict[str, Any]]) -> Outcome:
    return get_validator().validate_study_rows(rows)
