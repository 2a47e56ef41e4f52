"""
Approx command implementation.

Reads a square matrix from CSV, computes its best skew-square approximant,
and reports the approximant with its spectral ingredients.
"""

import logging
from typing import Optional

from skewsq.core.errors import NumericalError
from skewsq.core.interfaces import Command
from skewsq.formatters.csv import CsvFormatter
from skewsq.formatters.text import TextFormatter
from skewsq.parsers.matrix import MatrixParser
from skewsq.readers import AutoFileReader
from skewsq.skew_square import approximate, is_member, skew_square_root

logger = logging.getLogger(__name__)


class ApproxCommand(Command):
    """Command for approximating a matrix by the square of a skew matrix."""

    def __init__(self) -> None:
        """Initialize the approx command with default dependencies."""
        super().__init__(file_reader=AutoFileReader(), formatter=TextFormatter())
        self._parser = MatrixParser()

    def execute(
        self,
        matrix_file: str,
        output: Optional[str] = None,
        output_json: bool = False,
        output_csv: bool = False,
        check: bool = False,
        color: bool = False,
    ) -> None:
        """
        Execute the approx command.

        Args:
            matrix_file: Matrix CSV to approximate
            output: Where to write U* as matrix CSV (None: summary only)
            output_json: Print the summary as JSON
            output_csv: Print U* as matrix CSV
            check: Verify membership of U* and report its skew square root
            color: Colorize text output
        """
        a = self._parser.parse_lines(self._read_lines(matrix_file), source=matrix_file)
        result = approximate(a)

        root = None
        if check:
            if not is_member(result.u_star):
                raise NumericalError("approximant failed the skew-square membership check")
            root = skew_square_root(result.u_star)
            logger.info("membership check passed for %dx%d approximant", a.shape[0], a.shape[0])

        if output:
            self._write_output(CsvFormatter().format_matrix(result.u_star), output)
        formatter = self._get_formatter(output_json, output_csv, color)
        self._write_output(formatter.format_approximation(result, root), None)
