"""
Best approximation of square matrices by squares of skew-symmetric matrices.

A real matrix is the square of a skew-symmetric matrix exactly when it is
symmetric with non-positive eigenvalues that pair up, plus one zero
eigenvalue when the dimension is odd. The nearest such matrix in the
Frobenius norm keeps the eigenvectors of the symmetric part of the input and
replaces each adjacent eigenvalue pair by its mean, clipped at zero.
"""

import logging
import math
from dataclasses import replace
from typing import Any, Tuple

import numpy as np
from scipy.linalg import block_diag

from skewsq.core.errors import DataError, NumericalError
from skewsq.core.models import SkewSquareResult
from skewsq.linalg import as_matrix, frobenius_norm, is_symmetric, sym_part
from skewsq.spectral import eig_symmetric, eig_symmetric_batch

logger = logging.getLogger(__name__)

MEMBERSHIP_TOLERANCE = 1e-8


def _pair_starts(n: int) -> range:
    """Index of the first eigenvalue of each pair; odd dimensions skip index 0."""
    return range(n % 2, n - 1, 2)


def mu_star_from_lambda(eigenvalues: Any) -> np.ndarray:
    """
    Return the clipped pair means for a non-increasing eigenvalue list.

    Raises:
        DataError: if the list is empty, non-finite, or not non-increasing
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise DataError("eigenvalues must be a non-empty list")
    if not np.all(np.isfinite(lam)):
        raise DataError("eigenvalues must be finite")
    if np.any(np.diff(lam) > 0):
        raise DataError("eigenvalues must be sorted in non-increasing order")
    mu = []
    for i in _pair_starts(lam.size):
        pair_sum = lam[i] + lam[i + 1]
        mu.append(pair_sum / 2.0 if pair_sum <= 0.0 else 0.0)
    return np.array(mu, dtype=float)


def d_star_from_lambda(eigenvalues: Any) -> np.ndarray:
    """
    Return the diagonal of ``D*`` for a non-increasing eigenvalue list.

    Each pair mean appears twice; odd dimensions lead with a zero.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    mu = mu_star_from_lambda(lam)
    d = np.repeat(mu, 2)
    if lam.size % 2:
        d = np.concatenate(([0.0], d))
    return d


def approximate(a: Any) -> SkewSquareResult:
    """
    Compute the skew-square-spectral approximant ``U*`` of ``A``.

    ``U* = N D* N^T`` where ``(N, lambda)`` decomposes the symmetric part of
    ``A``. No skew-square matrix is closer to ``A`` in the Frobenius norm.

    Raises:
        DataError: if ``A`` is not a finite square matrix
        NumericalError: if the eigensolver does not converge
    """
    matrix = as_matrix(a)
    decomp = eig_symmetric(sym_part(matrix))
    mu = mu_star_from_lambda(decomp.eigenvalues)
    d = d_star_from_lambda(decomp.eigenvalues)
    n_factor = decomp.n_factor
    u = sym_part(replace(decomp, eigenvalues=d).reconstruct())
    residual = frobenius_norm(u - matrix)
    logger.debug("approximated %dx%d matrix, residual %.3e", u.shape[0], u.shape[0], residual)
    return SkewSquareResult(
        u_star=u,
        n_factor=n_factor,
        d_star=d,
        mu_star=mu,
        residual=residual,
        eigenvalues=decomp.eigenvalues,
    )


def approximate_batch(stack: Any) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Approximants of a stack of square matrices.

    Returns:
        ``(u_stars, n_factors, eigenvalues)`` with the decomposition of each
        symmetric part
    """
    a = np.asarray(stack, dtype=float)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise DataError(f"expected a stack of square matrices, got shape {a.shape}")
    n = a.shape[1]
    n_factors, eigenvalues = eig_symmetric_batch((a + np.swapaxes(a, 1, 2)) / 2.0)
    d = np.zeros_like(eigenvalues)
    for i in _pair_starts(n):
        pair_sum = eigenvalues[:, i] + eigenvalues[:, i + 1]
        mean = np.where(pair_sum <= 0.0, pair_sum / 2.0, 0.0)
        d[:, i] = mean
        d[:, i + 1] = mean
    u = (n_factors * d[:, None, :]) @ np.swapaxes(n_factors, 1, 2)
    return (u + np.swapaxes(u, 1, 2)) / 2.0, n_factors, eigenvalues


def _membership_from_spectrum(
    eigenvalues: np.ndarray, scale: np.ndarray, tol: float
) -> np.ndarray:
    """Vectorized spectral membership test for stacks of sorted eigenvalues."""
    n = eigenvalues.shape[1]
    bound = tol * scale
    ok = np.all(eigenvalues <= bound[:, None], axis=1)
    if n % 2:
        ok &= np.abs(eigenvalues[:, 0]) <= bound
    for i in _pair_starts(n):
        ok &= np.abs(eigenvalues[:, i] - eigenvalues[:, i + 1]) <= bound
    return ok


def is_member(s: Any, tol: float = MEMBERSHIP_TOLERANCE) -> bool:
    """
    Test whether ``S`` is the square of a real skew-symmetric matrix.

    Symmetry, sign, and pairing are all checked against ``tol * (1 + ||S||_F)``.
    """
    try:
        matrix = as_matrix(s)
    except DataError:
        return False
    if not is_symmetric(matrix, tol):
        return False
    try:
        decomp = eig_symmetric(matrix)
    except NumericalError:
        logger.warning("membership test could not decompose input")
        return False
    scale = np.array([1.0 + frobenius_norm(matrix)])
    return bool(_membership_from_spectrum(decomp.eigenvalues[None, :], scale, tol)[0])


def is_member_batch(
    stack: Any, tol: float = MEMBERSHIP_TOLERANCE
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Membership test for a stack of symmetric matrices.

    Returns:
        ``(mask, n_factors, eigenvalues)`` so callers can reuse the decomposition
    """
    s = np.asarray(stack, dtype=float)
    n_factors, eigenvalues = eig_symmetric_batch(s)
    scale = 1.0 + np.sqrt(np.einsum("kij,kij->k", s, s))
    asym = np.max(np.abs(s - np.swapaxes(s, 1, 2)), axis=(1, 2))
    mask = (asym <= tol * scale) & _membership_from_spectrum(eigenvalues, scale, tol)
    return mask, n_factors, eigenvalues


def _rotation_block(mu: float) -> np.ndarray:
    omega = math.sqrt(-min(mu, 0.0))
    return np.array([[0.0, -omega], [omega, 0.0]])


def skew_square_root(u: Any, tol: float = MEMBERSHIP_TOLERANCE) -> np.ndarray:
    """
    Return a skew-symmetric ``K`` with ``K @ K == U``.

    ``K = N blockdiag([0], [[0, -sqrt(-mu)], [sqrt(-mu), 0]], ...) N^T`` using
    the spectral factor of ``U``. Square roots are not unique; this fixes the
    representative with ``-sqrt(-mu)`` in the upper-right of every block.

    Raises:
        DataError: if ``U`` is not a skew square within ``tol``
    """
    if not is_member(u, tol):
        raise DataError("matrix is not the square of a skew-symmetric matrix")
    matrix = as_matrix(u)
    decomp = eig_symmetric(matrix)
    lam = decomp.eigenvalues
    n = lam.size
    blocks = [np.zeros((1, 1))] if n % 2 else []
    blocks += [_rotation_block((lam[i] + lam[i + 1]) / 2.0) for i in _pair_starts(n)]
    core = block_diag(*blocks)
    return decomp.n_factor @ core @ decomp.n_factor.T
