"""
Parser for the matrix CSV format.

One row per line, comma-separated decimal entries, no header. Blank lines
and ``#`` comments are skipped.
"""

import csv
from typing import Iterable, List

import numpy as np

from skewsq.core.errors import DataError
from skewsq.linalg import as_matrix


class MatrixParser:
    """Parse an n x n matrix from CSV lines."""

    def parse_lines(self, lines: Iterable[str], source: str = "<input>") -> np.ndarray:
        """
        Parse lines into a square matrix.

        Raises:
            DataError: on non-numeric entries, ragged rows, or a non-square shape
        """
        rows: List[List[float]] = []
        content = (line for line in lines if line.strip() and not line.lstrip().startswith("#"))
        for line_number, row in enumerate(csv.reader(content), start=1):
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                raise DataError(
                    f"{source}: row {line_number} has a non-numeric entry"
                ) from None
        if not rows:
            raise DataError(f"{source}: no matrix rows found")
        widths = {len(row) for row in rows}
        if len(widths) != 1:
            raise DataError(f"{source}: rows have different lengths {sorted(widths)}")
        if len(rows) != len(rows[0]):
            raise DataError(
                f"{source}: matrix is not square ({len(rows)}x{len(rows[0])})"
            )
        return as_matrix(rows)
