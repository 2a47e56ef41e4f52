"""
Core interfaces and abstract base classes for skewsq.

This module defines the contracts that let commands be assembled from
interchangeable readers, formatters, and estimators, and tested in isolation.
"""

import gzip
import logging
import os
from abc import ABC, abstractmethod
from typing import Any, Iterator, Optional

import click
import numpy as np

from skewsq.core.errors import SkewSqError
from skewsq.core.models import (
    BoundsSummary,
    ComparisonReport,
    EstimateSeries,
    EstimationMethod,
    MeasurementSeries,
    SkewSquareResult,
)

logger = logging.getLogger(__name__)


class FileReader(ABC):
    """Abstract interface for reading text files with different strategies."""

    @abstractmethod
    def read_lines(self, file_path: str) -> Iterator[str]:
        """
        Read lines from a file.

        Args:
            file_path: Path to the file to read

        Yields:
            Lines from the file
        """

    @abstractmethod
    def supports_compression(self) -> bool:
        """Whether this reader supports compressed files."""


class ResultFormatter(ABC):
    """Abstract interface for rendering results."""

    @abstractmethod
    def format_approximation(
        self, result: SkewSquareResult, root: Optional[np.ndarray] = None
    ) -> str:
        """
        Format a skew-square approximation.

        Args:
            result: Approximation to format
            root: Skew square root of the approximant, when it was computed
        """

    @abstractmethod
    def format_comparison(self, report: ComparisonReport) -> str:
        """Format a comparison of estimators on one trial."""

    @abstractmethod
    def format_bounds(self, summary: BoundsSummary) -> str:
        """Format a Monte-Carlo error-bound summary."""


class Estimator(ABC):
    """Abstract interface for angular velocity estimators."""

    @property
    @abstractmethod
    def method(self) -> EstimationMethod:
        """The method tag attached to produced estimates."""

    @abstractmethod
    def run(self, series: MeasurementSeries, w0: np.ndarray) -> EstimateSeries:
        """
        Estimate the body angular velocity at every instant of ``series``.

        Args:
            series: Measurement matrices on a time grid
            w0: Body angular velocity at the first instant

        Returns:
            Estimate on the same grid
        """


class Command(ABC):
    """Abstract base class for all commands."""

    def __init__(
        self,
        file_reader: Optional[FileReader] = None,
        formatter: Optional[ResultFormatter] = None,
    ) -> None:
        """
        Initialize command with dependencies.

        Args:
            file_reader: File reading strategy
            formatter: Output formatting strategy
        """
        self._file_reader = file_reader
        self._formatter = formatter

    @abstractmethod
    def execute(self, **kwargs: Any) -> None:
        """
        Execute the command with given arguments.

        Raises:
            SkewSqError: on invalid input or numerical failure
        """

    def run(self, **kwargs: Any) -> int:
        """
        Execute the command and translate failures into an exit status.

        Returns:
            0 on success, otherwise the exit code carried by the error
        """
        try:
            self.execute(**kwargs)
        except SkewSqError as e:
            click.echo(f"Error: {e}", err=True)
            return e.exit_code
        except OSError as e:
            click.echo(f"Error: {e}", err=True)
            return 3
        return 0

    def _read_lines(self, file_path: str) -> Iterator[str]:
        if not self._file_reader:
            raise RuntimeError("FileReader must be provided")
        return self._file_reader.read_lines(file_path)

    def _write_output(self, content: str, output_path: Optional[str]) -> None:
        """
        Write content to a file or stdout.

        Paths ending in ``.gz`` are written gzip-compressed.

        Args:
            content: Content to write
            output_path: Output file path, or None for stdout
        """
        if not output_path:
            click.echo(content, nl=not content.endswith("\n"))
            return
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        if output_path.endswith(".gz"):
            # no name or mtime in the header: same content, same bytes
            with open(output_path, "wb") as raw:
                with gzip.GzipFile(
                    fileobj=raw, mode="wb", filename="", mtime=0
                ) as gz:
                    gz.write(content.encode("utf-8"))
        else:
            with open(output_path, "w", encoding="utf-8", newline="") as f:
                f.write(content)
        logger.debug("wrote %d characters to %s", len(content), output_path)

    def _resolve_output(
        self, output_path: Optional[str], output_dir: Optional[str]
    ) -> Optional[str]:
        """
        Join a relative output path to the default output directory.

        Args:
            output_path: Path given on the command line, or None for stdout
            output_dir: Default output directory, if configured
        """
        if not output_path or not output_dir or os.path.isabs(output_path):
            return output_path
        return os.path.join(output_dir, output_path)

    def _get_formatter(
        self, output_json: bool, output_csv: bool, use_colors: bool = False
    ) -> ResultFormatter:
        """
        Get the appropriate formatter based on output options.

        Args:
            output_json: Whether to use JSON output
            output_csv: Whether to use CSV output
            use_colors: Whether text output is colorized

        Returns:
            Formatter instance
        """
        from skewsq.formatters import CsvFormatter, JsonFormatter, TextFormatter

        if output_json:
            return JsonFormatter()
        if output_csv:
            return CsvFormatter()
        if self._formatter is not None and not use_colors:
            return self._formatter
        return TextFormatter(use_colors=use_colors)
