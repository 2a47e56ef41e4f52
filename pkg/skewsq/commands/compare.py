"""
Compare command implementation.

Simulates one trial, runs the square-root estimator and the integration
baseline on it, and writes plot-ready series with a metrics summary.
"""

import json
import os
from typing import Optional

import click

from skewsq.core.interfaces import Command
from skewsq.core.models import EstimationMethod, RunConfig
from skewsq.estimators import (
    AOIntegrationEstimator,
    PlainSqrtAOEstimator,
    SqrtAOEstimator,
)
from skewsq.formatters.csv import CsvFormatter
from skewsq.formatters.text import TextFormatter
from skewsq.metrics import compare_estimates
from skewsq.synth import generate, time_grid


class CompareCommand(Command):
    """
    Command for comparing estimators on a simulated trial.

    Writes ``<stem>_series.csv`` (truth and estimates per component),
    ``<stem>_projection.csv`` (projection diagnostics) and
    ``<stem>_summary.json``.
    """

    def __init__(self) -> None:
        """Initialize the compare command with default dependencies."""
        super().__init__(formatter=TextFormatter())
        self._csv = CsvFormatter()

    def execute(
        self,
        config: RunConfig,
        stem: str = "compare",
        output_dir: Optional[str] = None,
        sign_reference: str = "propagated",
        include_plain: bool = False,
        output_json: bool = False,
        color: bool = False,
    ) -> None:
        """
        Execute the compare command.

        Args:
            config: Profile, grid, and noise settings
            stem: Output file prefix
            output_dir: Directory that relative output paths are joined to
            sign_reference: Root sign reference for sqrt_ao
            include_plain: Also run the square-root estimator without projection
            output_json: Print the summary as JSON
            color: Colorize the text summary
        """
        profile = config.profile()
        times = time_grid(config.resolved_duration, config.sample_rate)
        series = generate(profile, times, config.noise_sigma, config.seed)
        assert series.truth_w is not None
        w0 = series.truth_w[0]

        estimators = [SqrtAOEstimator(sign_reference), AOIntegrationEstimator()]
        if include_plain:
            estimators.append(PlainSqrtAOEstimator())
        estimates = [e.run(series, w0) for e in estimators]
        report = compare_estimates(
            series.truth_w,
            estimates,
            profile=profile,
            noise_sigma=config.noise_sigma,
            seed=config.seed,
        )

        sqrt_ao = report.estimate_for(EstimationMethod.SQRT_AO)
        base = self._resolve_output(stem, output_dir) or stem
        written = [f"{base}_series.csv", f"{base}_projection.csv", f"{base}_summary.json"]
        self._write_output(self._csv.format_comparison(report), written[0])
        self._write_output(self._csv.format_projection(sqrt_ao), written[1])
        self._write_output(json.dumps(report.to_dict(), indent=2) + "\n", written[2])

        formatter = self._get_formatter(output_json, False, color)
        self._write_output(formatter.format_comparison(report), None)
        if not output_json:
            for path in written:
                click.echo(f"Wrote {os.path.normpath(path)}")
