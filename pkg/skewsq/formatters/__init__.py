"""
Output formatters for text, JSON, and CSV.
"""

from skewsq.formatters.csv import CsvFormatter
from skewsq.formatters.json import JsonFormatter
from skewsq.formatters.text import TextFormatter

__all__ = [
    "TextFormatter",
    "JsonFormatter",
    "CsvFormatter",
]
