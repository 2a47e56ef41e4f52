"""
CSV formatter for plot-ready output.

Every float is written with 17 significant digits so files read back to the
same doubles.
"""

import csv
import io
from typing import Any, Iterable, List, Optional, Sequence

import numpy as np

from skewsq.core.errors import DataError
from skewsq.core.interfaces import ResultFormatter
from skewsq.core.models import (
    BoundsSummary,
    ComparisonReport,
    EstimateSeries,
    MeasurementSeries,
    SkewSquareResult,
)
from skewsq.parsers.series import ESTIMATE_HEADER, P_COLUMNS, W_COLUMNS


def _num(value: float) -> str:
    return format(float(value), ".17g")


class CsvFormatter(ResultFormatter):
    """Formatter for CSV output."""

    def __init__(self, delimiter: str = ",") -> None:
        self.delimiter = delimiter

    def _render(self, header: Optional[Sequence[str]], rows: Iterable[Sequence[Any]]) -> str:
        output = io.StringIO()
        writer = csv.writer(output, delimiter=self.delimiter, lineterminator="\n")
        if header is not None:
            writer.writerow(header)
        writer.writerows(rows)
        return output.getvalue()

    def format_matrix(self, matrix: Any) -> str:
        """Matrix CSV: one row per line, no header."""
        arr = np.asarray(matrix, dtype=float)
        return self._render(None, ([_num(v) for v in row] for row in arr))

    def format_approximation(
        self, result: SkewSquareResult, root: Optional[np.ndarray] = None
    ) -> str:
        return self.format_matrix(result.u_star)

    def format_series(self, series: MeasurementSeries) -> str:
        header = ["tau"] + P_COLUMNS
        if series.truth_w is not None:
            header += W_COLUMNS
        rows = []
        for i in range(len(series)):
            row = [_num(series.times[i])] + [_num(v) for v in series.p_tilde[i].ravel()]
            if series.truth_w is not None:
                row += [_num(v) for v in series.truth_w[i]]
            rows.append(row)
        return self._render(header, rows)

    def format_estimate(self, estimate: EstimateSeries) -> str:
        method = estimate.method.value
        rows = (
            [_num(t)] + [_num(v) for v in w] + [method]
            for t, w in zip(estimate.times, estimate.w_est)
        )
        return self._render(ESTIMATE_HEADER, rows)

    def format_comparison(self, report: ComparisonReport) -> str:
        """Per-component truth and estimates, one column per plotted curve."""
        header = ["tau"] + [f"{c}_true" for c in W_COLUMNS]
        columns: List[np.ndarray] = [report.times[:, None], report.truth_w]
        for est in report.estimates:
            header += [f"{c}_{est.method.value}" for c in W_COLUMNS]
            columns.append(est.w_est)
        table = np.hstack(columns)
        return self._render(header, ([_num(v) for v in row] for row in table))

    def format_projection(self, estimate: EstimateSeries) -> str:
        """Per-instant projection diagnostics of a square-root estimate."""
        record = estimate.projections
        if record is None:
            raise DataError(f"{estimate.method.value} estimate has no projection record")
        header = ["tau", "projection_residual", "mu_star", "lambda1", "lambda2", "lambda3"]
        rows = (
            [_num(t), _num(r), _num(m)] + [_num(v) for v in lam]
            for t, r, m, lam in zip(
                estimate.times, record.residuals, record.mu_star, record.eigenvalues
            )
        )
        return self._render(header, rows)

    def format_bounds(self, summary: BoundsSummary) -> str:
        return self._render(["metric", "value"], summary.to_dict().items())
