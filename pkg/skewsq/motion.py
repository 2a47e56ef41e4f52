"""
Ground-truth kinematics for fixed-axis rotation experiments.

Rotation angles are truncated Fourier series over the odd harmonics 1, 3, 5;
derivatives are taken term by term. All angle functions accept scalars or
numpy arrays of times.
"""

import math
from typing import Any, Union

import numpy as np

from skewsq.core.errors import DataError
from skewsq.core.models import MotionProfile, ProfileKind
from skewsq.linalg import ast

ArrayLike = Union[float, np.ndarray]

HARMONICS = np.array([1.0, 3.0, 5.0])
# (-1) ** ((n + 1) / 2) for n = 1, 3, 5
OSCILLATORY_SIGNS = np.array([-1.0, 1.0, -1.0])
UNIT_AXIS_TOLERANCE = 1e-9


def _phases(profile: MotionProfile, tau: ArrayLike) -> np.ndarray:
    """Return ``2 n pi tau / tau1`` with a trailing harmonic axis."""
    t = np.asarray(tau, dtype=float)
    return 2.0 * math.pi * t[..., None] * HARMONICS / profile.tau1


def _result(value: np.ndarray, tau: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(tau) == 0 else value


def theta(profile: MotionProfile, tau: ArrayLike) -> ArrayLike:
    """Rotation angle at ``tau``."""
    w, t1 = profile.omega_m, profile.tau1
    t = np.asarray(tau, dtype=float)
    if profile.kind is ProfileKind.CONSTANT:
        return _result(w * t, tau)
    phase = _phases(profile, t)
    if profile.kind is ProfileKind.PUNCTUATED:
        series = np.sum(np.sin(phase) / HARMONICS**3, axis=-1)
        return _result(0.5 * w * t - (2.0 * w * t1 / math.pi**3) * series, tau)
    series = np.sum(OSCILLATORY_SIGNS * np.cos(phase) / HARMONICS**3, axis=-1)
    return _result(w * t1 / 8.0 + (4.0 * w * t1 / math.pi**3) * series, tau)


def theta_dot(profile: MotionProfile, tau: ArrayLike) -> ArrayLike:
    """Rotation rate at ``tau``."""
    w = profile.omega_m
    t = np.asarray(tau, dtype=float)
    if profile.kind is ProfileKind.CONSTANT:
        return _result(np.full_like(t, w), tau)
    phase = _phases(profile, t)
    if profile.kind is ProfileKind.PUNCTUATED:
        series = np.sum(np.cos(phase) / HARMONICS**2, axis=-1)
        return _result(0.5 * w - (4.0 * w / math.pi**2) * series, tau)
    series = np.sum(OSCILLATORY_SIGNS * np.sin(phase) / HARMONICS**2, axis=-1)
    return _result(-(8.0 * w / math.pi**2) * series, tau)


def theta_ddot(profile: MotionProfile, tau: ArrayLike) -> ArrayLike:
    """Rotation acceleration at ``tau``."""
    w, t1 = profile.omega_m, profile.tau1
    t = np.asarray(tau, dtype=float)
    if profile.kind is ProfileKind.CONSTANT:
        return _result(np.zeros_like(t), tau)
    phase = _phases(profile, t)
    if profile.kind is ProfileKind.PUNCTUATED:
        series = np.sum(np.sin(phase) / HARMONICS, axis=-1)
        return _result((8.0 * w / (math.pi * t1)) * series, tau)
    series = np.sum(OSCILLATORY_SIGNS * np.cos(phase) / HARMONICS, axis=-1)
    return _result(-(16.0 * w / (math.pi * t1)) * series, tau)


def rodrigues(axis: Any, angle: float) -> np.ndarray:
    """
    Rotation by ``angle`` about a unit ``axis``.

    ``R = n n^T + (I - n n^T) cos(angle) + (*n) sin(angle)``

    Raises:
        DataError: if ``axis`` is not a unit 3-vector
    """
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise DataError("rotation axis must be three finite components")
    if abs(float(np.linalg.norm(n)) - 1.0) > UNIT_AXIS_TOLERANCE:
        raise DataError("rotation axis must have unit length")
    outer = np.outer(n, n)
    return outer + (np.eye(3) - outer) * math.cos(angle) + ast(n) * math.sin(angle)


def rotation(profile: MotionProfile, tau: float) -> np.ndarray:
    """Orientation ``R(tau)`` of the profile."""
    return rodrigues(profile.axis, float(theta(profile, tau)))


def body_angular_velocity(profile: MotionProfile, tau: ArrayLike) -> np.ndarray:
    """
    Body angular velocity ``theta'(tau) * axis``.

    Scalar ``tau`` gives shape (3,); an array of m times gives (m, 3).
    """
    rate = np.asarray(theta_dot(profile, tau), dtype=float)
    return rate[..., None] * profile.axis


def body_angular_accel(profile: MotionProfile, tau: ArrayLike) -> np.ndarray:
    """Body angular acceleration ``theta''(tau) * axis``; fixed axis."""
    accel = np.asarray(theta_ddot(profile, tau), dtype=float)
    return accel[..., None] * profile.axis
