"""
Estimate command implementation.

Runs one estimator over a measurement series read from disk and writes the
estimate CSV. Series that carry truth columns are also scored.
"""

import logging
from typing import Optional, Tuple

import click
import numpy as np

from skewsq.core.errors import UsageError
from skewsq.core.interfaces import Command
from skewsq.estimators import create_estimator
from skewsq.formatters.csv import CsvFormatter
from skewsq.metrics import compare_estimates
from skewsq.parsers.series import SeriesParser
from skewsq.readers import AutoFileReader

logger = logging.getLogger(__name__)


class EstimateCommand(Command):
    """Command for estimating angular velocity from a series file."""

    def __init__(self) -> None:
        super().__init__(file_reader=AutoFileReader())
        self._parser = SeriesParser()
        self._csv = CsvFormatter()

    def execute(
        self,
        series_file: str,
        w0: Optional[Tuple[float, float, float]] = None,
        method: str = "sqrt_ao",
        sign_reference: str = "propagated",
        output: Optional[str] = None,
        output_dir: Optional[str] = None,
        output_json: bool = False,
        color: bool = False,
    ) -> None:
        """
        Execute the estimate command.

        Args:
            series_file: Series CSV (optionally gzip-compressed)
            w0: Angular velocity at the first instant; defaults to the truth
                columns when the file has them
            method: Estimator name or alias
            sign_reference: Root sign reference for sqrt_ao
            output: Estimate CSV path; None writes the CSV to stdout
            output_dir: Directory that relative output paths are joined to
            output_json: Print the score summary as JSON (on stderr when
                the CSV goes to stdout)
            color: Colorize the text summary
        """
        series = self._parser.parse_lines(self._read_lines(series_file), source=series_file)
        if w0 is not None:
            start = np.array(w0, dtype=float)
        elif series.truth_w is not None:
            start = series.truth_w[0]
            logger.info("initial angular velocity taken from the truth columns")
        else:
            raise UsageError("--w0 is required when the series has no truth columns")

        estimator = create_estimator(method, sign_reference=sign_reference)
        estimate = estimator.run(series, start)

        path = self._resolve_output(output, output_dir)
        self._write_output(self._csv.format_estimate(estimate), path)
        if path:
            click.echo(f"Wrote {len(estimate)} rows to {path}")
        if series.truth_w is None:
            return
        report = compare_estimates(series.truth_w, [estimate])
        summary = self._get_formatter(output_json, False, color).format_comparison(report)
        # stdout carries the CSV when there is no output file
        click.echo(summary, err=not path, nl=not summary.endswith("\n"))
