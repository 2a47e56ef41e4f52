"""
Dense small-matrix algebra.

Frobenius inner product and norm, the symmetric/skew split, the maps between
skew-symmetric 3x3 matrices and 3-vectors, and random orthogonal matrices.
"""

import math
from typing import Any, Optional

import numpy as np

from skewsq.core.errors import DataError

SKEW_TOLERANCE = 1e-9


def as_matrix(values: Any) -> np.ndarray:
    """
    Validate and copy ``values`` as a read-only square float matrix.

    Raises:
        DataError: if the input is not square, is empty, or has non-finite entries
    """
    try:
        arr = np.array(values, dtype=float, copy=True)
    except (TypeError, ValueError) as e:
        raise DataError(f"not a numeric matrix: {e}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DataError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError("matrix has non-finite entries")
    arr.flags.writeable = False
    return arr


def as_vector3(values: Any) -> np.ndarray:
    """Validate and copy ``values`` as a read-only finite 3-vector."""
    try:
        arr = np.array(values, dtype=float, copy=True)
    except (TypeError, ValueError) as e:
        raise DataError(f"not a numeric vector: {e}") from None
    if arr.shape != (3,):
        raise DataError(f"expected three components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError("vector has non-finite components")
    arr.flags.writeable = False
    return arr


def _check_same_shape(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DataError(f"dimension mismatch: {x.shape} vs {y.shape}")


def frobenius_inner(x: Any, y: Any) -> float:
    """Return ``sum_ij X_ij Y_ij``."""
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    _check_same_shape(x_arr, y_arr)
    return float(np.vdot(x_arr, y_arr))


def frobenius_norm(x: Any) -> float:
    return float(np.linalg.norm(np.asarray(x, dtype=float)))


def sym_part(a: Any) -> np.ndarray:
    """Return ``(A + A^T) / 2``, exactly symmetric."""
    arr = np.asarray(a, dtype=float)
    return (arr + arr.T) / 2.0


def skew_part(a: Any) -> np.ndarray:
    """Return ``(A - A^T) / 2``, exactly skew-symmetric."""
    arr = np.asarray(a, dtype=float)
    return (arr - arr.T) / 2.0


def is_symmetric(a: np.ndarray, tol: float) -> bool:
    scale = 1.0 + frobenius_norm(a)
    return bool(np.max(np.abs(a - a.T)) <= tol * scale)


def is_skew(a: np.ndarray, tol: float = SKEW_TOLERANCE) -> bool:
    scale = 1.0 + frobenius_norm(a)
    return bool(np.max(np.abs(a + a.T)) <= tol * scale)


def star(w: Any, tol: float = SKEW_TOLERANCE) -> np.ndarray:
    """
    Map a skew-symmetric 3x3 matrix to its axial vector ``(W32, W13, W21)``.

    Raises:
        DataError: if ``w`` is not 3x3 or is not skew within
            ``tol * (1 + ||W||_F)``
    """
    arr = np.asarray(w, dtype=float)
    if arr.shape != (3, 3):
        raise DataError(f"star expects a 3x3 matrix, got shape {arr.shape}")
    if not is_skew(arr, tol):
        raise DataError("star expects a skew-symmetric matrix")
    return np.array([arr[2, 1], arr[0, 2], arr[1, 0]])


def ast(v: Any) -> np.ndarray:
    """Map a 3-vector to the skew matrix ``*v`` with ``(*v) x = v cross x``."""
    x, y, z = np.asarray(v, dtype=float)
    return np.array(
        [
            [0.0, -z, y],
            [z, 0.0, -x],
            [-y, x, 0.0],
        ]
    )


def star_batch(w: np.ndarray) -> np.ndarray:
    """Axial vectors of a stack of skew matrices, shape (m, 3, 3) -> (m, 3)."""
    return np.stack([w[:, 2, 1], w[:, 0, 2], w[:, 1, 0]], axis=-1)


def ast_batch(v: np.ndarray) -> np.ndarray:
    """Skew matrices of a stack of vectors, shape (m, 3) -> (m, 3, 3)."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = -v[..., 2]
    out[..., 0, 2] = v[..., 1]
    out[..., 1, 0] = v[..., 2]
    out[..., 1, 2] = -v[..., 0]
    out[..., 2, 0] = -v[..., 1]
    out[..., 2, 1] = v[..., 0]
    return out


def random_orthogonal(
    n: int, seed: Optional[int] = None, sweeps: int = 2
) -> np.ndarray:
    """
    Return a random n x n orthogonal matrix, deterministic per ``seed``.

    Built as a product of plane rotations with uniform random angles over
    ``sweeps`` passes through every coordinate pair, followed by a random
    column reflection so both components of O(n) are reachable.
    """
    if n < 1:
        raise DataError(f"dimension must be at least 1, got {n}")
    rng = np.random.default_rng(seed)
    q = np.eye(n)
    for _ in range(sweeps):
        for p in range(n - 1):
            for r in range(p + 1, n):
                angle = rng.uniform(-math.pi, math.pi)
                c, s = math.cos(angle), math.sin(angle)
                col_p = q[:, p].copy()
                q[:, p] = c * col_p - s * q[:, r]
                q[:, r] = s * col_p + c * q[:, r]
    if rng.random() < 0.5:
        q[:, rng.integers(n)] *= -1.0
    return q
