"""
Bounds command implementation.

Monte-Carlo check of the inequalities bounding root errors by projection
errors.
"""

from typing import Optional

from skewsq.core.errors import NumericalError
from skewsq.core.interfaces import Command
from skewsq.formatters.text import TextFormatter
from skewsq.metrics import run_bounds_monte_carlo


class BoundsCommand(Command):
    """Command for checking the error bounds on random draws."""

    def __init__(self) -> None:
        super().__init__(formatter=TextFormatter())

    def execute(
        self,
        draws: int = 10_000,
        dimension: int = 3,
        seed: Optional[int] = 0,
        scale: float = 0.5,
        output_json: bool = False,
        output_csv: bool = False,
        color: bool = False,
    ) -> None:
        """
        Execute the bounds command.

        Raises:
            NumericalError: if any draw violates a bound
        """
        summary = run_bounds_monte_carlo(draws, dimension, seed, scale)
        formatter = self._get_formatter(output_json, output_csv, color)
        self._write_output(formatter.format_bounds(summary), None)
        if not summary.all_hold:
            raise NumericalError(
                f"error bounds violated ({summary.angular_violations} angular, "
                f"{summary.projection_violations} projection, "
                f"{summary.combined_violations} combined)"
            )
