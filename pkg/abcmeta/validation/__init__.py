"""
Schema validation for abcmeta.
"""

from .validator import (
    SchemaIssue,
    Validator,
    get_validator,
    join_path,
    validate_experiment,
    validate_selection_experiment,
    validate_study_rows,
)

__all__ = [
    "SchemaIssue",
    "Validator",
    "get_validator",
    "join_path",
    "validate_experiment",
    "validate_selection_experiment",
    "validate_study_rows",
]
