"""
Core domain models, errors and interfaces for skewsq.

This module contains the fundamental abstractions and value objects
used throughout the application.
"""

from skewsq.core.errors import DataError, NumericalError, SkewSqError, UsageError
from skewsq.core.interfaces import Command, Estimator, FileReader, ResultFormatter
from skewsq.core.models import (
    BoundReport,
    BoundsSummary,
    ComparisonReport,
    EstimateSeries,
    EstimationMethod,
    MeasurementSeries,
    MotionProfile,
    ProfileKind,
    ProjectionRecord,
    RunConfig,
    SignReference,
    SkewSquareResult,
    SpectralDecomp,
)

__all__ = [
    "BoundReport",
    "BoundsSummary",
    "Command",
    "ComparisonReport",
    "DataError",
    "EstimateSeries",
    "EstimationMethod",
    "Estimator",
    "FileReader",
    "MeasurementSeries",
    "MotionProfile",
    "NumericalError",
    "ProfileKind",
    "ProjectionRecord",
    "ResultFormatter",
    "RunConfig",
    "SignReference",
    "SkewSqError",
    "SkewSquareResult",
    "SpectralDecomp",
    "UsageError",
]
