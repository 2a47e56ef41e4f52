"""
Skewsq: best approximation by squares of skew-symmetric matrices.

This package computes the nearest skew square to a matrix in the Frobenius
norm and uses it to estimate rigid-body angular velocity from accelerometer
measurement matrices, alongside an integration baseline and error metrics.
"""

__version__ = "0.1.0"
__author__ = "Skewsq Team"

from skewsq.cli import main

__all__ = ["main"]
