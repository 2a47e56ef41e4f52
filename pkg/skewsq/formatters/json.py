"""
JSON formatter for machine-readable output.
"""

import json
from typing import Any, Dict, Optional

import numpy as np

from skewsq.core.interfaces import ResultFormatter
from skewsq.core.models import BoundsSummary, ComparisonReport, SkewSquareResult


class JsonFormatter(ResultFormatter):
    """Formatter for JSON output."""

    def __init__(self, indent: int = 2) -> None:
        """
        Initialize the JSON formatter.

        Args:
            indent: Number of spaces for JSON indentation
        """
        self.indent = indent

    def format_approximation(
        self, result: SkewSquareResult, root: Optional[np.ndarray] = None
    ) -> str:
        data = result.to_dict()
        if root is not None:
            data["skew_root"] = np.asarray(root).tolist()
        return self._dump(data)

    def format_comparison(self, report: ComparisonReport) -> str:
        return self._dump(report.to_dict())

    def format_bounds(self, summary: BoundsSummary) -> str:
        return self._dump(summary.to_dict())

    def _dump(self, data: Dict[str, Any]) -> str:
        return json.dumps(data, indent=self.indent, ensure_ascii=False) + "\n"
