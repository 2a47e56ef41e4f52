"""
Synthetic measurement series.

The measurement matrix of a rotating body is ``P = (*w)^2 + *(w')`` in body
coordinates. Measurements are ``P`` plus i.i.d. Gaussian noise on every entry.
"""

import logging
import math
from typing import Any, Optional

import numpy as np

from skewsq.core.errors import DataError
from skewsq.core.models import MeasurementSeries, MotionProfile
from skewsq.linalg import ast_batch
from skewsq.motion import body_angular_accel, body_angular_velocity

logger = logging.getLogger(__name__)


def time_grid(duration: float, sample_rate: float, start: float = 0.0) -> np.ndarray:
    """
    Uniform grid ``start + i / sample_rate`` for ``i = 0 .. round(duration * rate)``.

    Raises:
        DataError: if duration or rate is not positive
    """
    if not (math.isfinite(duration) and duration > 0):
        raise DataError(f"duration must be positive, got {duration}")
    if not (math.isfinite(sample_rate) and sample_rate > 0):
        raise DataError(f"sample rate must be positive, got {sample_rate}")
    count = int(round(duration * sample_rate))
    return start + np.arange(count + 1, dtype=float) / sample_rate


def measurement_matrices(profile: MotionProfile, times: Any) -> np.ndarray:
    """Noiseless ``P`` at each time, shape (m, 3, 3)."""
    w = ast_batch(body_angular_velocity(profile, np.asarray(times, dtype=float)))
    dw = ast_batch(body_angular_accel(profile, np.asarray(times, dtype=float)))
    return w @ w + dw


def generate(
    profile: MotionProfile,
    times: Any,
    noise_sigma: float = 0.0,
    seed: Optional[int] = 0,
) -> MeasurementSeries:
    """
    Simulate noisy measurements of ``profile`` on ``times``.

    Noise draws come from ``numpy.random.default_rng(seed)`` in instant order,
    so a seed always reproduces the same series.

    Raises:
        DataError: if the grid is not strictly increasing or sigma is negative
    """
    grid = np.asarray(times, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DataError("time grid must be a non-empty list of times")
    if np.any(np.diff(grid) <= 0) or not np.all(np.isfinite(grid)):
        raise DataError("time grid must be finite and strictly increasing")
    if not (math.isfinite(noise_sigma) and noise_sigma >= 0):
        raise DataError(f"noise sigma must be non-negative, got {noise_sigma}")

    p = measurement_matrices(profile, grid)
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        p = p + rng.normal(0.0, noise_sigma, size=p.shape)
    logger.info(
        "simulated %d instants of %s rotation (sigma=%g, seed=%s)",
        grid.size,
        profile.kind.value,
        noise_sigma,
        seed,
    )
    return MeasurementSeries(
        times=grid,
        p_tilde=p,
        truth_w=body_angular_velocity(profile, grid),
        noise_sigma=noise_sigma,
        seed=seed,
    )
