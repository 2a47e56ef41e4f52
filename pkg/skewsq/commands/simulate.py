"""
Simulate command implementation.

Generates a noisy measurement series for a rotation profile and writes it as
series CSV.
"""

from typing import Optional

import click

from skewsq.core.interfaces import Command
from skewsq.core.models import RunConfig
from skewsq.formatters.csv import CsvFormatter
from skewsq.synth import generate, time_grid


class SimulateCommand(Command):
    """Command for synthesizing measurement series."""

    def __init__(self) -> None:
        super().__init__()
        self._csv = CsvFormatter()

    def execute(
        self,
        config: RunConfig,
        output: Optional[str] = None,
        output_dir: Optional[str] = None,
    ) -> None:
        """
        Execute the simulate command.

        Args:
            config: Profile, grid, and noise settings
            output: Series file (``.gz`` is compressed); None writes to stdout
            output_dir: Directory that relative output paths are joined to
        """
        times = time_grid(config.resolved_duration, config.sample_rate)
        series = generate(config.profile(), times, config.noise_sigma, config.seed)
        content = self._csv.format_series(series)
        path = self._resolve_output(output, output_dir)
        self._write_output(content, path)
        if path:
            click.echo(f"Wrote {len(series)} rows to {path}")
