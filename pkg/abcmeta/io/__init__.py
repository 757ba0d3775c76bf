"""
Study table parsing and result writers.
"""

from .tables import (
    StudyRow,
    CSV_COLUMNS,
    ESTIMATE_COLUMNS,
    SELECTION_COLUMNS,
    ARE_COLUMNS,
    SELECTION_SUMMARY_COLUMNS,
    read_study_csv,
    read_study_json,
    read_studies,
    write_table,
    read_table,
    selection_table_path,
    RunManifest,
    config_digest,
    manifest_path,
    write_manifest,
)

__all__ = [
    "StudyRow",
    "CSV_COLUMNS",
    "ESTIMATE_COLUMNS",
    "SELECTION_COLUMNS",
    "ARE_COLUMNS",
    "SELECTION_SUMMARY_COLUMNS",
    "read_study_csv",
    "read_study_json",
    "read_studies",
    "write_table",
    "read_table",
    "selection_table_path",
    "RunManifest",
    "config_digest",
    "manifest_path",
    "write_manifest",
]
