"""Data access layer for tables, reports and the committed oracle table."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import polars as pl

from src.config.constants import ORACLE_COLUMNS, ORACLE_TABLE_FILE, TABLE_COLUMNS
from src.models import ReportError, VerifyReport
from src.utils.helpers import format_float

logger = logging.getLogger(__name__)

TABLE_SCHEMA = {
    'rep': pl.Utf8,
    'nu': pl.Float64,
    'mu': pl.Float64,
    'x': pl.Float64,
    'y': pl.Float64,
    'value': pl.Float64,
    'abs_err_est': pl.Float64,
    'status': pl.Utf8,
}

ORACLE_SCHEMA = {
    'nu': pl.Float64,
    'mu': pl.Float64,
    'x_signed': pl.Float64,
    'y': pl.Float64,
    'value_30digits': pl.Utf8,
}


class DataRepository:
    """Reads and writes sweep tables, verification reports and the oracle table."""

    def __init__(self, base_path: Optional[Path] = None):
        """Initialize the repository.

        Args:
            base_path: Directory that relative paths are resolved against
        """
        self.base_path = base_path

    def _get_file_path(self, filename: Path) -> Path:
        """Get the full path for a data file."""
        filename = Path(filename)
        if self.base_path and not filename.is_absolute():
            return self.base_path / filename
        return filename

    def _load_json_file(self, filepath: Path) -> Any:
        """Load data from a JSON file.

        Raises:
            ReportError: If the file is missing or not valid JSON
        """
        full_path = self._get_file_path(filepath)

        try:
            with open(full_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
                logger.info(f"Loaded data from {full_path}")
                return data
        except FileNotFoundError as e:
            logger.error(f"File not found: {full_path}")
            raise ReportError(f"File not found: {full_path}") from e
        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in {full_path}: {e}")
            raise ReportError(f"Invalid JSON in {full_path}: {e}") from e

    def _save_json_file(self, data: Any, filepath: Path) -> Path:
        """Save data to a JSON file.

        Raises:
            ReportError: If the file cannot be written
        """
        full_path = self._get_file_path(filepath)

        try:
            full_path.parent.mkdir(parents=True, exist_ok=True)

            with open(full_path, 'w', encoding='utf-8') as f:
                json.dump(data, f, indent=2, ensure_ascii=False)
                logger.info(f"Saved data to {full_path}")
        except OSError as e:
            logger.error(f"Failed to save to {full_path}: {e}")
            raise ReportError(f"Failed to save to {full_path}: {e}") from e
        return full_path

    # ==================== Sweep tables ====================

    @staticmethod
    def rows_to_frame(rows: List[Dict[str, Any]]) -> pl.DataFrame:
        """Build a table with the fixed column order."""
        frame = pl.DataFrame(rows, schema=TABLE_SCHEMA)
        return frame.select(list(TABLE_COLUMNS))

    def save_table(self, rows: List[Dict[str, Any]], filepath: Path, fmt: str = "csv") -> Path:
        """Write sweep rows as CSV or as a JSON array of objects.

        Floats are written with 17 significant digits so values read back
        bit-for-bit.

        Raises:
            ReportError: If the file cannot be written
        """
        full_path = self._get_file_path(filepath)
        frame = self.rows_to_frame(rows)

        if fmt == "json":
            return self._save_json_file(frame.to_dicts(), full_path)

        text = frame.with_columns([
            pl.col(name).map_elements(format_float, return_dtype=pl.Utf8)
            for name in ('nu', 'mu', 'x', 'y', 'value', 'abs_err_est')
        ])
        try:
            full_path.parent.mkdir(parents=True, exist_ok=True)
            text.write_csv(full_path, null_value="")
        except OSError as e:
            logger.error(f"Failed to write table {full_path}: {e}")
            raise ReportError(f"Failed to write table {full_path}: {e}") from e
        logger.info(f"Wrote {frame.height} rows to {full_path}")
        return full_path

    def _read_csv_checked(self, full_path: Path, schema: Dict[str, Any], what: str) -> pl.DataFrame:
        """Read every column as text, check the header, then cast to ``schema``.

        Raises:
            ReportError: If the file is unreadable, has other columns or bad cells
        """
        try:
            frame = pl.read_csv(full_path, infer_schema_length=0)
        except (OSError, pl.exceptions.PolarsError) as e:
            logger.error(f"Failed to read {what} {full_path}: {e}")
            raise ReportError(f"Failed to read {what} {full_path}: {e}") from e
        if tuple(frame.columns) != tuple(schema):
            raise ReportError(f"{full_path}: expected columns {tuple(schema)}, got {frame.columns}")
        try:
            return frame.with_columns([pl.col(name).cast(dtype) for name, dtype in schema.items()])
        except pl.exceptions.PolarsError as e:
            raise ReportError(f"{full_path}: malformed {what} cell: {e}") from e

    def load_table(self, filepath: Path) -> pl.DataFrame:
        """Read a table written by :meth:`save_table`, either format.

        Raises:
            ReportError: If the file is missing or has the wrong columns
        """
        full_path = self._get_file_path(filepath)
        if full_path.suffix != ".json":
            return self._read_csv_checked(full_path, TABLE_SCHEMA, "table")

        rows = self._load_json_file(full_path)
        if not isinstance(rows, list) or any(
                not isinstance(row, dict) or tuple(row) != TABLE_COLUMNS for row in rows):
            raise ReportError(f"{full_path}: expected an array of objects with keys {TABLE_COLUMNS}")
        return pl.DataFrame(rows, schema=TABLE_SCHEMA)

    # ==================== Reports ====================

    def save_report(self, report: VerifyReport, filepath: Path) -> Path:
        """Write a verification report as JSON."""
        return self._save_json_file(report.to_dict(), filepath)

    def load_report(self, filepath: Path) -> Dict[str, Any]:
        """Load a verification report written by :meth:`save_report`."""
        data = self._load_json_file(filepath)
        for key in ('header', 'summary', 'rows'):
            if key not in data:
                raise ReportError(f"{filepath}: report has no '{key}' section")
        return data

    # ==================== Oracle table ====================

    def save_oracle_table(self, frame: pl.DataFrame, filepath: Optional[Path] = None) -> Path:
        """Write the 30-digit cross-validation table."""
        full_path = self._get_file_path(filepath or ORACLE_TABLE_FILE)
        try:
            full_path.parent.mkdir(parents=True, exist_ok=True)
            frame.select(list(ORACLE_COLUMNS)).write_csv(full_path)
        except OSError as e:
            logger.error(f"Failed to write oracle table {full_path}: {e}")
            raise ReportError(f"Failed to write oracle table {full_path}: {e}") from e
        logger.info(f"Wrote {frame.height} oracle points to {full_path}")
        return full_path

    def load_oracle_table(self, filepath: Optional[Path] = None) -> Optional[pl.DataFrame]:
        """Read the oracle table, or None when it has not been generated.

        The value column stays text so all 30 digits survive.

        Raises:
            ReportError: If the file exists but cannot be parsed
        """
        full_path = self._get_file_path(filepath or ORACLE_TABLE_FILE)
        if not full_path.exists():
            logger.warning(f"Oracle table not found: {full_path}")
            return None
        return self._read_csv_checked(full_path, ORACLE_SCHEMA, "oracle table")
