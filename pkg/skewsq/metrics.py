"""
Error metrics for angular velocity estimates.

Relative L2 errors over the measurement window, error trends over time, and
the error-bound inequalities linking root errors to projection errors.
"""

import logging
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import numpy as np
from scipy.integrate import trapezoid
from scipy.stats import linregress

from skewsq.core.errors import DataError
from skewsq.core.models import (
    BoundReport,
    BoundsSummary,
    ComparisonReport,
    EstimateSeries,
    MotionProfile,
)
from skewsq.linalg import frobenius_inner, frobenius_norm
from skewsq.skew_square import approximate_batch

logger = logging.getLogger(__name__)

BOUND_CONSTANTS = {2: 2.0, 3: 8.0}
# slack for inequalities that are tight in exact arithmetic
BOUND_SLACK = 1e-9


class TrendFit(NamedTuple):
    """Least-squares line through per-instant errors."""

    slope: float
    intercept: float
    pvalue: float
    stderr: float


def _aligned(est: EstimateSeries, truth: Any) -> np.ndarray:
    truth_arr = np.asarray(truth, dtype=float)
    if truth_arr.shape != est.w_est.shape:
        raise DataError(
            f"truth shape {truth_arr.shape} does not match estimate {est.w_est.shape}"
        )
    return truth_arr


def _l2_norm(times: np.ndarray, values: np.ndarray) -> float:
    """``sqrt(integral |v|^2 dtau)`` by the trapezoidal rule."""
    squared = values**2 if values.ndim == 1 else np.sum(values**2, axis=1)
    return float(np.sqrt(trapezoid(squared, times)))


def relative_l2_error(est: EstimateSeries, truth: Any) -> float:
    """
    Relative L2 error ``||w_est - w|| / ||w||`` over the estimate's grid.

    Raises:
        DataError: if shapes differ or the truth has zero L2 norm
    """
    truth_arr = _aligned(est, truth)
    denominator = _l2_norm(est.times, truth_arr)
    if denominator == 0.0:
        raise DataError("true angular velocity has zero L2 norm")
    return _l2_norm(est.times, est.w_est - truth_arr) / denominator


def component_errors(est: EstimateSeries, truth: Any) -> List[Optional[float]]:
    """Relative L2 error per component; ``None`` where the true component vanishes."""
    truth_arr = _aligned(est, truth)
    errors: List[Optional[float]] = []
    for k in range(3):
        denominator = _l2_norm(est.times, truth_arr[:, k])
        if denominator == 0.0:
            errors.append(None)
            continue
        errors.append(_l2_norm(est.times, est.w_est[:, k] - truth_arr[:, k]) / denominator)
    return errors


def error_trend(est: EstimateSeries, truth: Any) -> TrendFit:
    """Fit a line to ``|w_est(tau) - w(tau)|`` against ``tau``."""
    truth_arr = _aligned(est, truth)
    if len(est) < 3:
        raise DataError("error trend needs at least three instants")
    errors = np.linalg.norm(est.w_est - truth_arr, axis=1)
    fit = linregress(est.times, errors)
    return TrendFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        pvalue=float(fit.pvalue),
        stderr=float(fit.stderr),
    )


def _holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + BOUND_SLACK * max(lhs, rhs)


def check_error_bounds(
    w_true: Any,
    w_est: Any,
    b: Any,
    b_hat: Any,
    n: int,
    b_tilde: Optional[Any] = None,
) -> BoundReport:
    """
    Evaluate the root-error bounds at one instant.

    Checks ``||W - W~||^4 <= C_n ||B - B^||^2`` with ``C_2 = 2`` and
    ``C_3 = 8`` when ``<W, W~> > 0``. With ``b_tilde`` also checks
    ``||B - B^|| <= 2 ||B - B~||`` and ``||W - W~||^4 <= 4 C_n ||B - B~||^2``.

    Raises:
        DataError: if the matrices are not all n x n
    """
    mats = [np.asarray(m, dtype=float) for m in (w_true, w_est, b, b_hat)]
    if b_tilde is not None:
        mats.append(np.asarray(b_tilde, dtype=float))
    if any(m.shape != (n, n) for m in mats):
        raise DataError(f"all matrices must be {n}x{n}")
    w, w_t, b_arr, b_h = mats[:4]

    b_hat_error = frobenius_norm(b_arr - b_h)
    b_tilde_error: Optional[float] = None
    holds_projection: Optional[bool] = None
    if b_tilde is not None:
        b_tilde_error = frobenius_norm(b_arr - mats[4])
        holds_projection = _holds(b_hat_error, 2.0 * b_tilde_error)

    c_n = BOUND_CONSTANTS.get(n)
    reason = ""
    if c_n is None:
        reason = f"no bound constant for n={n}"
    elif frobenius_inner(w, w_t) <= 0.0:
        reason = "true and estimated roots do not have a positive inner product"
    if c_n is None or reason:
        return BoundReport(
            dimension=n,
            applicable=False,
            reason=reason,
            b_hat_error=b_hat_error,
            b_tilde_error=b_tilde_error,
            holds_projection=holds_projection,
        )

    w_error_fourth = frobenius_norm(w - w_t) ** 4
    b_error_sq = b_hat_error**2
    holds_combined: Optional[bool] = None
    if b_tilde_error is not None:
        holds_combined = _holds(w_error_fourth, 4.0 * c_n * b_tilde_error**2)
    return BoundReport(
        dimension=n,
        applicable=True,
        c_n=c_n,
        w_error_fourth=w_error_fourth,
        b_error_sq=b_error_sq,
        holds_angular=_holds(w_error_fourth, c_n * b_error_sq),
        b_hat_error=b_hat_error,
        b_tilde_error=b_tilde_error,
        holds_projection=holds_projection,
        holds_combined=holds_combined,
    )


def _random_skew(rng: np.random.Generator, draws: int, n: int) -> np.ndarray:
    g = rng.normal(size=(draws, n, n))
    return (g - np.swapaxes(g, 1, 2)) / 2.0


def _oriented_roots(
    n_factors: np.ndarray, eigenvalues: np.ndarray, reference: np.ndarray
) -> np.ndarray:
    """Skew roots of rank-two approximants, signed toward ``reference``."""
    n = eigenvalues.shape[1]
    p = n % 2
    pair_sum = eigenvalues[:, p] + eigenvalues[:, p + 1]
    omega = np.sqrt(-np.minimum(pair_sum / 2.0, 0.0))
    cp = n_factors[:, :, p]
    cq = n_factors[:, :, p + 1]
    roots = omega[:, None, None] * (
        np.einsum("ki,kj->kij", cq, cp) - np.einsum("ki,kj->kij", cp, cq)
    )
    signs = np.where(np.einsum("kij,kij->k", roots, reference) < 0.0, -1.0, 1.0)
    return signs[:, None, None] * roots


def run_bounds_monte_carlo(
    draws: int = 10_000,
    dimension: int = 3,
    seed: Optional[int] = 0,
    scale: float = 0.5,
) -> BoundsSummary:
    """
    Check the error bounds on random instants.

    Each draw takes a random skew ``W`` and ``B = W^2``, perturbs ``B`` by a
    symmetric Gaussian matrix of size ``scale * 10**U(-3, 0) * ||B||``,
    projects it, and takes the root of the projection closest to ``W``.

    Raises:
        DataError: for a dimension other than 2 or 3, or a non-positive count
    """
    if dimension not in BOUND_CONSTANTS:
        raise DataError(f"error bounds are only defined for n=2 and n=3, got {dimension}")
    if draws < 1:
        raise DataError(f"draws must be positive, got {draws}")
    if not scale > 0:
        raise DataError(f"scale must be positive, got {scale}")

    rng = np.random.default_rng(seed)
    w = _random_skew(rng, draws, dimension)
    b = w @ w
    noise = rng.normal(size=(draws, dimension, dimension))
    noise = (noise + np.swapaxes(noise, 1, 2)) / 2.0
    size = scale * 10.0 ** rng.uniform(-3.0, 0.0, size=draws)
    size *= np.sqrt(np.einsum("kij,kij->k", b, b)) / np.maximum(
        np.sqrt(np.einsum("kij,kij->k", noise, noise)), 1e-300
    )
    b_tilde = b + size[:, None, None] * noise
    b_hat, n_factors, eigenvalues = approximate_batch(b_tilde)
    w_est = _oriented_roots(n_factors, eigenvalues, w)

    summary = BoundsSummary(dimension=dimension, draws=draws)
    for i in range(draws):
        report = check_error_bounds(w[i], w_est[i], b[i], b_hat[i], dimension, b_tilde[i])
        if report.holds_projection is False:
            summary.projection_violations += 1
        if report.b_tilde_error:
            summary.worst_projection_ratio = max(
                summary.worst_projection_ratio,
                (report.b_hat_error or 0.0) / (2.0 * report.b_tilde_error),
            )
        if not report.applicable:
            summary.not_applicable += 1
            continue
        if report.holds_angular is False:
            summary.angular_violations += 1
        if report.holds_combined is False:
            summary.combined_violations += 1
        if report.b_error_sq:
            summary.worst_angular_ratio = max(
                summary.worst_angular_ratio,
                (report.w_error_fourth or 0.0) / ((report.c_n or 1.0) * report.b_error_sq),
            )
    logger.info(
        "bounds: %d draws, %d not applicable, %d/%d/%d violations",
        draws,
        summary.not_applicable,
        summary.angular_violations,
        summary.projection_violations,
        summary.combined_violations,
    )
    return summary


def compare_estimates(
    truth_w: Any,
    estimates: Sequence[EstimateSeries],
    profile: Optional[MotionProfile] = None,
    noise_sigma: Optional[float] = None,
    seed: Optional[int] = None,
) -> ComparisonReport:
    """Score every estimate against the same truth."""
    if not estimates:
        raise DataError("nothing to compare")
    truth_arr = np.asarray(truth_w, dtype=float)
    errors: Dict[str, float] = {}
    per_component: Dict[str, List[Optional[float]]] = {}
    slopes: Dict[str, float] = {}
    for est in estimates:
        name = est.method.value
        errors[name] = relative_l2_error(est, truth_arr)
        per_component[name] = component_errors(est, truth_arr)
        if len(est) >= 3:
            slopes[name] = error_trend(est, truth_arr).slope
    return ComparisonReport(
        times=estimates[0].times,
        truth_w=truth_arr,
        estimates=list(estimates),
        errors=errors,
        component_errors=per_component,
        error_slopes=slopes,
        profile=profile,
        noise_sigma=noise_sigma,
        seed=seed,
    )
