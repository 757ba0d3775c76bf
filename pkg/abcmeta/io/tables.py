"""
Study tables in, result tables out.

Input is a CSV with columns study_id, n, min, q1, median, q3, max,
family_hint, lower, upper (blank cells are missing values) or a JSON
array of StudyRow objects. Output tables are CSV written with 17
significant digits so reading them back recovers the exact floats.
"""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple, Union
import hashlib
import json
import logging
import sys

import pandas as pd
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from .. import __version__
from ..core.errors import MissingField, ParseError
from ..core.summary import SummaryStats
from ..distributions.families import Family, normalize_family
from ..validation.validator import validate_study_rows


logger = logging.getLogger(__name__)

# CSV header -> StudyRow field
CSV_COLUMNS: Dict[str, str] = {
    "study_id": "study_id",
    "n": "n",
    "min": "x_min",
    "q1": "x_q1",
    "median": "x_med",
    "q3": "x_q3",
    "max": "x_max",
    "family_hint": "family_hint",
    "lower": "lower",
    "upper": "upper",
}
FIELD_TO_CSV = {v: k for k, v in CSV_COLUMNS.items()}
REQUIRED_CSV_COLUMNS = ("study_id", "n")

ESTIMATE_COLUMNS = ["study_id", "method", "scenario", "mean_est", "sd_est", "n_accepted", "error_code"]
SELECTION_COLUMNS = ["study_id", "family", "posterior_prob", "chosen", "error_code"]
ARE_COLUMNS = [
    "method", "distribution", "scenario", "n",
    "are_mean", "are_sd", "se_mean", "se_sd", "replicates", "failures", "excluded",
]
SELECTION_SUMMARY_COLUMNS = [
    "experiment", "candidate", "chosen_count", "chosen_rate",
    "mean_posterior", "are_mean", "are_sd", "repeats",
]

FLOAT_FORMAT = "%.17g"


# =============================================================================
# INPUT
# =============================================================================

class StudyRow(BaseModel):
    """One study's reported summary."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    study_id: str
    n: int
    x_min: Optional[float] = None
    x_q1: Optional[float] = None
    x_med: Optional[float] = None
    x_q3: Optional[float] = None
    x_max: Optional[float] = None
    family_hint: Optional[Family] = None
    support_bounds: Optional[Tuple[float, float]] = None

    @field_validator("study_id", mode="before")
    @classmethod
    def _id_as_text(cls, value: Any) -> Any:
        return str(value) if isinstance(value, int) else value

    @field_validator("family_hint", mode="before")
    @classmethod
    def _family(cls, value: Any) -> Any:
        if value is None or isinstance(value, Family):
            return value
        return normalize_family(value)

    @model_validator(mode="after")
    def _bounds_ordered(self) -> "StudyRow":
        if self.support_bounds is not None and not self.support_bounds[0] < self.support_bounds[1]:
            raise ValueError("support lower bound must be below the upper bound")
        return self

    def to_stats(self) -> SummaryStats:
        """
        Raises:
            MissingField: the median is absent
        """
        if self.x_med is None:
            raise MissingField(["x_med"])
        return SummaryStats(
            x_med=self.x_med,
            n=self.n,
            x_min=self.x_min,
            x_q1=self.x_q1,
            x_q3=self.x_q3,
            x_max=self.x_max,
        )


def _column_of(loc: Sequence[Any], csv: bool) -> Optional[str]:
    if not loc:
        return None
    name = str(loc[0])
    if csv:
        if name == "support_bounds":
            return "lower"
        return FIELD_TO_CSV.get(name, name)
    return name


def _row_error(exc: ValidationError, row: int, csv: bool) -> ParseError:
    first = exc.errors()[0]
    return ParseError(first["msg"], row=row, column=_column_of(first.get("loc", ()), csv))


def _check_unique(rows: List[StudyRow], first_row: int) -> None:
    seen: Dict[str, int] = {}
    for i, row in enumerate(rows):
        if row.study_id in seen:
            raise ParseError(
                f"duplicate study_id {row.study_id!r} (first seen at row {seen[row.study_id]})",
                row=first_row + i,
                column="study_id",
            )
        seen[row.study_id] = first_row + i


def _blank(value: Any) -> bool:
    return value is None or (isinstance(value, str) and value.strip() == "")


def read_study_csv(source: Union[str, Path, TextIO]) -> List[StudyRow]:
    """
    Parse a CSV study table.

    Row numbers in errors count the header as row 1.

    Raises:
        ParseError: unreadable file, unknown or missing columns, bad cells
    """
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read study table: {e}") from None

    frame.columns = [str(c).strip().lower() for c in frame.columns]
    unknown = [c for c in frame.columns if c not in CSV_COLUMNS]
    if unknown:
        raise ParseError(f"unknown column(s): {', '.join(unknown)}", row=1, column=unknown[0])
    for column in REQUIRED_CSV_COLUMNS:
        if column not in frame.columns:
            raise ParseError("required column is missing", row=1, column=column)

    rows: List[StudyRow] = []
    for i, record in enumerate(frame.to_dict(orient="records")):
        line = i + 2
        values = {CSV_COLUMNS[k]: (None if _blank(v) else v.strip()) for k, v in record.items()}
        lower, upper = values.pop("lower", None), values.pop("upper", None)
        if (lower is None) != (upper is None):
            raise ParseError("lower and upper must be given together", row=line,
                             column="upper" if upper is None else "lower")
        if lower is not None:
            values["support_bounds"] = (lower, upper)
        try:
            rows.append(StudyRow.model_validate(values))
        except ValidationError as e:
            raise _row_error(e, line, csv=True) from None
        except ValueError as e:
            raise ParseError(str(e), row=line, column="family_hint") from None

    _check_unique(rows, first_row=2)
    return rows


def read_study_json(source: Union[str, Path]) -> List[StudyRow]:
    """
    Parse a JSON array of study objects.

    Row numbers in errors are 1-based array positions.
    """
    try:
        with open(source, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ParseError(f"cannot read study table: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", row=e.lineno) from None

    valid, errors = validate_study_rows(data)
    if not valid:
        first = errors[0]
        row, column = _json_location(first.path)
        raise ParseError(first.message, row=row, column=column)

    rows: List[StudyRow] = []
    for i, item in enumerate(data):
        try:
            rows.append(StudyRow.model_validate(item))
        except ValidationError as e:
            raise _row_error(e, i + 1, csv=False) from None
        except ValueError as e:
            raise ParseError(str(e), row=i + 1, column="family_hint") from None

    _check_unique(rows, first_row=1)
    return rows


def _json_location(path: str) -> Tuple[Optional[int], Optional[str]]:
    """'[3].x_min' -> (4, 'x_min')."""
    if not path.startswith("["):
        return None, None
    index, _, rest = path[1:].partition("]")
    column = rest.lstrip(".").split(".")[0].split("[")[0] or None
    return int(index) + 1, column


def read_studies(path: Union[str, Path]) -> List[StudyRow]:
    """Read a study table, choosing the parser by file extension."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return read_study_json(path)
    return read_study_csv(path)


# =============================================================================
# OUTPUT
# =============================================================================

def write_table(
    rows: List[Dict[str, Any]],
    columns: List[str],
    path: Optional[Union[str, Path]] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """Write rows as CSV to path, or to stream (stdout by default)."""
    frame = pd.DataFrame(rows, columns=columns)
    if path is not None:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    else:
        frame.to_csv(stream or sys.stdout, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def read_table(path: Union[str, Path]) -> pd.DataFrame:
    """Read back a table written by write_table."""
    return pd.read_csv(path, keep_default_na=True)


def selection_table_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(f"{output.stem}_selection.csv")


# =============================================================================
# MANIFEST
# =============================================================================

def config_digest(options: Dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON form of options."""
    canonical = json.dumps(options, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    """What produced an output file."""
    seed: Optional[int]
    config_digest: str
    tool_version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    command: str = ""

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "seed": self.seed,
            "config_digest": self.config_digest,
            "timestamp": self.timestamp,
            "command": self.command,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(
            seed=data.get("seed"),
            config_digest=data.get("config_digest", ""),
            tool_version=data.get("tool_version", ""),
            timestamp=data.get("timestamp", ""),
            command=data.get("command", ""),
        )

    @classmethod
    def for_options(cls, command: str, seed: Optional[int], options: Dict[str, Any]) -> "RunManifest":
        return cls(seed=seed, config_digest=config_digest(options), command=command)


def manifest_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(f"{output.name}.manifest.json")


def write_manifest(manifest: RunManifest, output: Optional[Union[str, Path]]) -> Optional[Path]:
    """
    Write the manifest next to output.

    With no output file the manifest is logged instead and None returned.
    """
    if output is None:
        logger.info(f"Run manifest: {json.dumps(manifest.to_dict(), sort_keys=True)}")
        return None
    path = manifest_path(output)
    path.write_text(json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
