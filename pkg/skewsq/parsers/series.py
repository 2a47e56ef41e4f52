"""
Parser for measurement-series CSV files.

Series files carry ``tau,p11,...,p33`` and optionally the truth columns
``w1,w2,w3``. Estimate files written by the CLI use ``ESTIMATE_HEADER``.
"""

import csv
from typing import Dict, Iterable, List, Optional

import numpy as np

from skewsq.core.errors import DataError
from skewsq.core.models import MeasurementSeries

P_COLUMNS = [f"p{i}{j}" for i in range(1, 4) for j in range(1, 4)]
W_COLUMNS = ["w1", "w2", "w3"]
ESTIMATE_HEADER = ["tau"] + W_COLUMNS + ["method"]


def _rows(lines: Iterable[str], source: str) -> "csv.DictReader[str]":
    reader = csv.DictReader(line for line in lines if line.strip())
    if reader.fieldnames is None:
        raise DataError(f"{source}: file is empty")
    reader.fieldnames = [name.strip().lower() for name in reader.fieldnames]
    return reader


def _float(row: Dict[str, str], column: str, line_number: int, source: str) -> float:
    try:
        return float(row[column])
    except (TypeError, ValueError):
        raise DataError(
            f"{source}: line {line_number}: bad value for column '{column}'"
        ) from None


class SeriesParser:
    """Parse a measurement series; truth columns are optional."""

    def parse_lines(self, lines: Iterable[str], source: str = "<input>") -> MeasurementSeries:
        """
        Raises:
            DataError: on a missing column, a bad value, or an invalid grid
        """
        reader = _rows(lines, source)
        columns = set(reader.fieldnames or [])
        missing = [c for c in ["tau"] + P_COLUMNS if c not in columns]
        if missing:
            raise DataError(f"{source}: missing columns {', '.join(missing)}")
        has_truth = all(c in columns for c in W_COLUMNS)

        times: List[float] = []
        p_rows: List[List[float]] = []
        truth: List[List[float]] = []
        for line_number, row in enumerate(reader, start=2):
            times.append(_float(row, "tau", line_number, source))
            p_rows.append([_float(row, c, line_number, source) for c in P_COLUMNS])
            if has_truth:
                truth.append([_float(row, c, line_number, source) for c in W_COLUMNS])
        if not times:
            raise DataError(f"{source}: no data rows")
        truth_w: Optional[np.ndarray] = np.array(truth) if has_truth else None
        return MeasurementSeries(
            times=np.array(times),
            p_tilde=np.array(p_rows).reshape(len(times), 3, 3),
            truth_w=truth_w,
        )
