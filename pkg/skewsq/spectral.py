"""
Real spectral decomposition of symmetric matrices.

Cyclic Jacobi rotations, vectorized over stacks of matrices so that long
measurement series are decomposed in one pass. Each matrix in a stack stops
rotating once its own off-diagonal mass falls below tolerance, so a matrix
gets the same decomposition alone or inside a stack.
"""

import logging
from typing import Any, Tuple

import numpy as np

from skewsq.core.errors import DataError, NumericalError
from skewsq.core.models import SpectralDecomp
from skewsq.linalg import as_matrix

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOLERANCE = 1e-14
MAX_SWEEPS = 100


def _off_diagonal_norm(a: np.ndarray) -> np.ndarray:
    off = a.copy()
    idx = np.arange(a.shape[-1])
    off[:, idx, idx] = 0.0
    return np.sqrt(np.einsum("kij,kij->k", off, off))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int, active: np.ndarray) -> None:
    """Annihilate entry (p, q) of every active matrix in place."""
    apq = a[:, p, q]
    mask = active & (apq != 0.0)
    if not mask.any():
        return
    safe_apq = np.where(mask, apq, 1.0)
    theta = (a[:, q, q] - a[:, p, p]) / (2.0 * safe_apq)
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(1.0, theta))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c
    c = np.where(mask, c, 1.0)[:, None]
    s = np.where(mask, s, 0.0)[:, None]

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q].copy()
    a[:, :, p] = c * col_p - s * col_q
    a[:, :, q] = s * col_p + c * col_q
    row_p = a[:, p, :].copy()
    row_q = a[:, q, :].copy()
    a[:, p, :] = c * row_p - s * row_q
    a[:, q, :] = s * row_p + c * row_q
    a[mask, p, q] = 0.0
    a[mask, q, p] = 0.0

    vec_p = v[:, :, p].copy()
    vec_q = v[:, :, q].copy()
    v[:, :, p] = c * vec_p - s * vec_q
    v[:, :, q] = s * vec_p + c * vec_q


def eig_symmetric_batch(
    stack: Any,
    tol: float = OFF_DIAGONAL_TOLERANCE,
    max_sweeps: int = MAX_SWEEPS,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Decompose a stack of symmetric matrices.

    Each input is symmetrized as ``(S + S^T) / 2`` first. Sweeps continue until
    the off-diagonal Frobenius mass of a matrix is at most ``tol * ||S||_F``.
    Eigenvalues come back non-increasing (stable order for ties) and every
    eigenvector has its largest-magnitude entry positive.

    Args:
        stack: Array of shape (m, n, n)
        tol: Relative off-diagonal tolerance
        max_sweeps: Sweep cap

    Returns:
        ``(n_factors, eigenvalues)`` of shapes (m, n, n) and (m, n)

    Raises:
        DataError: if the stack is malformed
        NumericalError: if some matrix has not converged after ``max_sweeps``
    """
    s = np.asarray(stack, dtype=float)
    if s.ndim != 3 or s.shape[1] != s.shape[2] or s.shape[1] < 1:
        raise DataError(f"expected a stack of square matrices, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise DataError("matrix stack has non-finite entries")
    m, n, _ = s.shape
    a = (s + np.swapaxes(s, 1, 2)) / 2.0
    v = np.broadcast_to(np.eye(n), (m, n, n)).copy()
    threshold = tol * np.sqrt(np.einsum("kij,kij->k", a, a))

    for sweep in range(max_sweeps):
        active = _off_diagonal_norm(a) > threshold
        if not active.any():
            logger.debug("jacobi converged after %d sweeps for %d matrices", sweep, m)
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q, active)
    else:
        unconverged = int(np.count_nonzero(_off_diagonal_norm(a) > threshold))
        if unconverged:
            raise NumericalError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"for {unconverged} of {m} matrices"
            )

    eigenvalues = np.diagonal(a, axis1=1, axis2=2).copy()
    order = np.argsort(-eigenvalues, axis=1, kind="stable")
    eigenvalues = np.take_along_axis(eigenvalues, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)

    pivot_rows = np.argmax(np.abs(v), axis=1)
    pivots = np.take_along_axis(v, pivot_rows[:, None, :], axis=1)[:, 0, :]
    v *= np.where(pivots < 0.0, -1.0, 1.0)[:, None, :]
    return v, eigenvalues


def eig_symmetric(
    s: Any,
    tol: float = OFF_DIAGONAL_TOLERANCE,
    max_sweeps: int = MAX_SWEEPS,
) -> SpectralDecomp:
    """
    Decompose a symmetric matrix as ``N diag(lambda) N^T``.

    See :func:`eig_symmetric_batch` for the ordering and sign conventions.
    """
    matrix = as_matrix(s)
    n_factors, eigenvalues = eig_symmetric_batch(matrix[None, :, :], tol, max_sweeps)
    return SpectralDecomp(n_factor=n_factors[0], eigenvalues=eigenvalues[0])
