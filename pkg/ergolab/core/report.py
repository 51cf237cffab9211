# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Experiment Reports

Tabular record of a parameter sweep: an echo header (tool, version, seed,
configuration), named rows, and a summary of slopes, empirical constants and
pass flags. Serializes deterministically to CSV or JSON.
"""

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ergolab.core.constants import FLOAT_SIGNIFICANT_DIGITS
from ergolab.core.errors import ShapeError

logger = logging.getLogger(__name__)

SLOPE_FLOOR = 1e-300
"""Values below this are clipped before taking logarithms"""


def format_float(value: float) -> str:
    """Format a float with the report's fixed significant digits."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, f".{FLOAT_SIGNIFICANT_DIGITS}g")


def plain_value(value: Any) -> Any:
    """Convert numpy scalars and containers to plain Python values."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            return format_float(value)
        return float(format_float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": plain_value(value.real), "im": plain_value(value.imag)}
    if isinstance(value, np.ndarray):
        return [plain_value(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): plain_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain_value(v) for v in value]
    return value


def _csv_cell(value: Any) -> str:
    value = plain_value(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """
    Least-squares slope of log(ys) against log(xs).

    Args:
        xs: Positive abscissae (e.g. the sweep's N values)
        ys: Measured values; non-positive entries are clipped to a tiny floor

    Returns:
        Fitted slope, or 0.0 when fewer than two distinct abscissae exist
    """
    x = np.asarray(xs, dtype=float)
    y = np.maximum(np.asarray(ys, dtype=float), SLOPE_FLOOR)
    if x.size < 2 or np.unique(x).size < 2:
        return 0.0
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


@dataclass
class ExperimentReport:
    """
    Result table of one experiment.

    Example:
        >>> report = ExperimentReport("aperiodicity", columns=["a", "b", "N", "value"])
        >>> report.add_row(a=1, b=0, N=100, value=0.01)
        >>> print(report.to_csv())
    """

    name: str
    columns: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    header: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, **values: Any) -> None:
        """Append a row; keys must match the declared columns exactly."""
        if set(values) != set(self.columns):
            raise ShapeError(
                f"Row keys {sorted(values)} do not match columns {self.columns} "
                f"of report '{self.name}'"
            )
        self.rows.append([values[c] for c in self.columns])

    def extend(self, rows: Iterable[Dict[str, Any]]) -> None:
        for row in rows:
            self.add_row(**row)

    def column(self, name: str) -> np.ndarray:
        """Return one column as a numpy array."""
        if name not in self.columns:
            raise ShapeError(f"Report '{self.name}' has no column '{name}'")
        index = self.columns.index(name)
        return np.asarray([row[index] for row in self.rows])

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    def sort_rows(self, keys: Sequence[str]) -> None:
        indices = [self.columns.index(k) for k in keys]
        self.rows.sort(key=lambda row: tuple(row[i] for i in indices))

    def passed(self) -> Optional[bool]:
        """Overall pass flag recorded in the summary, if any."""
        flag = self.summary.get("pass")
        return None if flag is None else bool(flag)

    def to_csv(self) -> str:
        """
        Serialize as CSV: '# key: value' header lines, a header row, data rows.

        Floats carry 17 significant digits and '.' decimals; summary entries
        follow the rows as '# summary.key: value' lines.
        """
        buffer = io.StringIO()
        for key in sorted(self.header):
            buffer.write(f"# {key}: {json.dumps(plain_value(self.header[key]), sort_keys=True)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(v) for v in row])
        for key in sorted(self.summary):
            buffer.write(
                f"# summary.{key}: {json.dumps(plain_value(self.summary[key]), sort_keys=True)}\n"
            )
        return buffer.getvalue()

    def to_json(self) -> str:
        """Serialize as one sorted-key JSON document."""
        document = {
            "name": self.name,
            "header": plain_value(self.header),
            "columns": list(self.columns),
            "rows": [plain_value(row) for row in self.rows],
            "summary": plain_value(self.summary),
        }
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ShapeError(f"Unknown report format '{fmt}' (must be 'csv' or 'json')")

    def __repr__(self) -> str:
        return f"ExperimentReport(name='{self.name}', rows={len(self.rows)}, columns={self.columns})"
