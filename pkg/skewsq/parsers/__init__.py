"""
Parsers for the matrix and series CSV formats.
"""

from skewsq.parsers.matrix import MatrixParser
from skewsq.parsers.series import SeriesParser

__all__ = [
    "MatrixParser",
    "SeriesParser",
]
