"""
Text formatter for human-readable output.

Summaries of approximations, estimator comparisons, and error-bound runs,
with optional colors.
"""

from typing import List, Optional, Sequence

import numpy as np
from colorama import Fore, Style, init

from skewsq.core.interfaces import ResultFormatter
from skewsq.core.models import BoundsSummary, ComparisonReport, SkewSquareResult

init(autoreset=True)


def _fmt(value: Optional[float], width: int = 12) -> str:
    if value is None:
        return "n/a".rjust(width)
    return f"{value:{width}.6g}"


class TextFormatter(ResultFormatter):
    """Formatter for human-readable text output with optional colors."""

    def __init__(self, use_colors: bool = False) -> None:
        """
        Initialize the text formatter.

        Args:
            use_colors: Whether to use colored output
        """
        self.use_colors = use_colors

    def format_approximation(
        self, result: SkewSquareResult, root: Optional[np.ndarray] = None
    ) -> str:
        lines = [self._header("Skew-Square Approximation")]
        lines.append(f"Dimension: {self._colorize(str(result.dimension), Fore.GREEN)}")
        lines.append(f"Eigenvalues of sym(A): {self._vector(result.eigenvalues)}")
        lines.append(f"Pair means mu*:        {self._vector(result.mu_star)}")
        lines.append(f"Diagonal D*:           {self._vector(result.d_star)}")
        lines.append("")
        lines.append(self._colorize("U*:", Fore.YELLOW, bold=True))
        lines.extend(self._matrix(result.u_star))
        lines.append("")
        lines.append(
            f"Residual ||U* - A||_F: {self._colorize(f'{result.residual:.12g}', Fore.MAGENTA)}"
        )
        if root is not None:
            lines.append("")
            lines.append(self._colorize("Skew square root K (K @ K = U*):", Fore.YELLOW, bold=True))
            lines.extend(self._matrix(root))
        lines.append("")
        return "\n".join(lines)

    def format_comparison(self, report: ComparisonReport) -> str:
        lines = [self._header("Angular Velocity Estimation")]
        if report.profile is not None:
            lines.append(f"Profile:     {report.profile.kind.value}")
            lines.append(f"omega_m:     {report.profile.omega_m:g}")
            lines.append(f"tau1:        {report.profile.tau1:g}")
        if report.noise_sigma is not None:
            lines.append(f"Noise sigma: {report.noise_sigma:g} (seed {report.seed})")
        lines.append(f"Instants:    {report.times.size}")
        lines.append(f"Window:      [{report.times[0]:g}, {report.times[-1]:g}]")
        lines.append("")
        lines.append(self._colorize("Relative L2 error:", Fore.YELLOW, bold=True))
        lines.append(
            f"  {'method':16}{'vector':>12}{'w1':>12}{'w2':>12}{'w3':>12}{'slope':>12}"
        )
        for est in report.estimates:
            name = est.method.value
            error = report.errors[name]
            color = Fore.GREEN if error < 0.1 else Fore.RED
            parts = "".join(_fmt(v) for v in report.component_errors.get(name, []))
            lines.append(
                f"  {name:16}{self._colorize(_fmt(error), color)}{parts}"
                f"{_fmt(report.error_slopes.get(name))}"
            )
        failing = [e for e in report.estimates if e.failures]
        if failing:
            lines.append("")
            for est in failing:
                lines.append(
                    self._colorize(
                        f"{est.method.value}: {est.failures} of {len(est)} instants "
                        f"could not be rooted",
                        Fore.RED,
                    )
                )
        lines.append("")
        return "\n".join(lines)

    def format_bounds(self, summary: BoundsSummary) -> str:
        lines = [self._header(f"Error Bounds (n={summary.dimension})")]
        lines.append(f"Draws:          {summary.draws}")
        lines.append(f"Applicable:     {summary.applicable}")
        lines.append(f"Not applicable: {summary.not_applicable}")
        lines.append("")
        rows = [
            ("||W-W~||^4 <= C_n ||B-B^||^2", summary.angular_violations),
            ("||B-B^|| <= 2 ||B-B~||", summary.projection_violations),
            ("||W-W~||^4 <= 4 C_n ||B-B~||^2", summary.combined_violations),
        ]
        for label, violations in rows:
            color = Fore.GREEN if violations == 0 else Fore.RED
            lines.append(f"  {label:34}: {self._colorize(f'{violations} violations', color)}")
        lines.append("")
        lines.append(f"Worst angular ratio:    {summary.worst_angular_ratio:.6g}")
        lines.append(f"Worst projection ratio: {summary.worst_projection_ratio:.6g}")
        verdict = "all bounds hold" if summary.all_hold else "bounds violated"
        lines.append(
            self._colorize(verdict, Fore.GREEN if summary.all_hold else Fore.RED, bold=True)
        )
        lines.append("")
        return "\n".join(lines)

    def _header(self, title: str) -> str:
        return self._colorize(title, Fore.CYAN, bold=True) + "\n" + "=" * 50 + "\n"

    def _vector(self, values: Sequence[float]) -> str:
        return "(" + ", ".join(f"{v:.6g}" for v in values) + ")"

    def _matrix(self, matrix: np.ndarray) -> List[str]:
        return ["  " + " ".join(f"{v:12.6g}" for v in row) for row in matrix]

    def _colorize(self, text: str, color: str, bold: bool = False) -> str:
        """
        Apply color to text if colors are enabled.

        Args:
            text: Text to colorize
            color: Color to apply
            bold: Whether to make text bold

        Returns:
            Colored or plain text
        """
        if not self.use_colors:
            return text
        result = color + text
        if bold:
            result = Style.BRIGHT + result
        return result + Style.RESET_ALL
