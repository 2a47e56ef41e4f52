"""
Angular velocity estimators driven by measurement matrices.

The square-root estimator projects the symmetric part of every measurement
onto the squares of 3x3 skew matrices and takes the root whose sign agrees
with a reference carried along the run. The integration baseline integrates
the axial vector of the skew part instead.
"""

import logging
from typing import Any, List, NamedTuple, Optional, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid

from skewsq.core.errors import DataError
from skewsq.core.interfaces import Estimator
from skewsq.core.models import (
    EstimateSeries,
    EstimationMethod,
    MeasurementSeries,
    ProjectionRecord,
    SignReference,
)
from skewsq.linalg import as_matrix, as_vector3, ast, frobenius_inner, star_batch
from skewsq.skew_square import MEMBERSHIP_TOLERANCE, is_member_batch
from skewsq.spectral import eig_symmetric_batch

logger = logging.getLogger(__name__)


class Projection(NamedTuple):
    """Projection of one symmetric 3x3 matrix onto the skew squares."""

    b_hat: np.ndarray
    n_factor: np.ndarray
    mu_star: float


def _sym_stack(p: np.ndarray) -> np.ndarray:
    return (p + np.swapaxes(p, 1, 2)) / 2.0


def _skew_stack(p: np.ndarray) -> np.ndarray:
    return (p - np.swapaxes(p, 1, 2)) / 2.0


def _pair_mean(eigenvalues: np.ndarray) -> np.ndarray:
    """Clipped mean of the two smallest eigenvalues of each 3x3 spectrum."""
    pair_sum = eigenvalues[:, 1] + eigenvalues[:, 2]
    return np.where(pair_sum <= 0.0, pair_sum / 2.0, 0.0)


def project_batch(
    b_tilde: Any,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Project a stack of 3x3 matrices onto the skew squares.

    ``B^ = N diag(0, mu, mu) N^T = mu (c2 c2^T + c3 c3^T)`` with ``c2, c3``
    the eigenvectors of the two smallest eigenvalues.

    Returns:
        ``(b_hat, n_factors, mu_star, eigenvalues)``
    """
    stack = np.asarray(b_tilde, dtype=float)
    if stack.ndim != 3 or stack.shape[1:] != (3, 3):
        raise DataError(f"expected a stack of 3x3 matrices, got shape {stack.shape}")
    n_factors, eigenvalues = eig_symmetric_batch(stack)
    mu = _pair_mean(eigenvalues)
    c2 = n_factors[:, :, 1]
    c3 = n_factors[:, :, 2]
    span = np.einsum("ki,kj->kij", c2, c2) + np.einsum("ki,kj->kij", c3, c3)
    return mu[:, None, None] * span, n_factors, mu, eigenvalues


def project_B(b_tilde: Any) -> Projection:
    """
    Project a symmetric 3x3 matrix onto the squares of skew matrices.

    Same result as :func:`skewsq.skew_square.approximate` specialized to n=3.
    """
    matrix = as_matrix(b_tilde)
    if matrix.shape != (3, 3):
        raise DataError(f"expected a 3x3 matrix, got shape {matrix.shape}")
    b_hat, n_factors, mu, _ = project_batch(matrix[None, :, :])
    return Projection(b_hat=b_hat[0], n_factor=n_factors[0], mu_star=float(mu[0]))


def _root_vectors(n_factors: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Axial vectors of ``sqrt(-mu) (c3 c2^T - c2 c3^T)`` for each instant."""
    omega = np.sqrt(-np.minimum(mu, 0.0))
    return omega[:, None] * np.cross(n_factors[:, :, 1], n_factors[:, :, 2])


def extract_W(
    n_factor: Any, mu_star: float, reference: Optional[Any] = None
) -> np.ndarray:
    """
    Skew root of ``N diag(0, mu, mu) N^T``.

    The root is ``sqrt(-mu) N [[0,0,0],[0,0,-1],[0,1,0]] N^T`` up to sign; the
    sign is chosen so the Frobenius inner product with ``reference`` is
    non-negative (ties keep the + branch).

    Raises:
        DataError: if ``mu_star`` is positive
    """
    if mu_star > 0:
        raise DataError(f"mu_star must be non-positive, got {mu_star}")
    if mu_star == 0:
        return np.zeros((3, 3))
    n = np.asarray(n_factor, dtype=float)
    omega = float(np.sqrt(-mu_star))
    c2, c3 = n[:, 1], n[:, 2]
    root = omega * (np.outer(c3, c2) - np.outer(c2, c3))
    if reference is not None and frobenius_inner(root, reference) < 0:
        root = -root
    return root


def _measured_accel(series: MeasurementSeries) -> np.ndarray:
    return star_batch(_skew_stack(np.asarray(series.p_tilde)))


def _choose_signs(
    times: np.ndarray,
    roots: np.ndarray,
    nonzero: np.ndarray,
    accel: np.ndarray,
    w0: np.ndarray,
    mode: SignReference,
) -> np.ndarray:
    """
    Resolve root signs instant by instant.

    Zero roots keep the anchor untouched in previous mode; in propagated mode
    the anchor moves to the propagated reference.
    """
    t = times.tolist()
    r = roots.tolist()
    a = accel.tolist()
    flags = nonzero.tolist()
    anchor = [float(x) for x in w0]
    out: List[List[float]] = []
    for i in range(len(t)):
        if i == 0 or mode is SignReference.PREVIOUS:
            ref = anchor
        else:
            half_dt = 0.5 * (t[i] - t[i - 1])
            ref = [anchor[k] + half_dt * (a[i - 1][k] + a[i][k]) for k in range(3)]
        v = r[i]
        if not flags[i]:
            out.append([0.0, 0.0, 0.0])
            if mode is SignReference.PROPAGATED:
                anchor = ref
            continue
        if v[0] * ref[0] + v[1] * ref[1] + v[2] * ref[2] < 0:
            v = [-v[0], -v[1], -v[2]]
        out.append(v)
        anchor = v
    return np.array(out, dtype=float).reshape(len(t), 3)


class SqrtAOEstimator(Estimator):
    """
    Projected square-root estimator.

    With ``SignReference.PREVIOUS`` each root is matched against the last
    nonzero root, so consecutive nonzero roots never have a negative inner
    product; that rule cannot follow a rate that reverses sign. The default
    ``SignReference.PROPAGATED`` matches each root against the last root
    advanced by the trapezoid of the measured acceleration, so roots reverse
    when the rate does.
    """

    def __init__(
        self, sign_reference: Union[str, SignReference] = SignReference.PROPAGATED
    ) -> None:
        if isinstance(sign_reference, str):
            sign_reference = SignReference.from_string(sign_reference)
        self._sign_reference = sign_reference

    @property
    def method(self) -> EstimationMethod:
        return EstimationMethod.SQRT_AO

    @property
    def sign_reference(self) -> SignReference:
        return self._sign_reference

    def run(self, series: MeasurementSeries, w0: Any) -> EstimateSeries:
        w_start = as_vector3(w0)
        b_tilde = _sym_stack(np.asarray(series.p_tilde))
        b_hat, n_factors, mu, eigenvalues = project_batch(b_tilde)
        roots = _root_vectors(n_factors, mu)
        w_est = _choose_signs(
            np.asarray(series.times),
            roots,
            mu < 0.0,
            _measured_accel(series),
            w_start,
            self._sign_reference,
        )
        residuals = np.sqrt(np.einsum("kij,kij->k", b_tilde - b_hat, b_tilde - b_hat))
        logger.info(
            "sqrt_ao estimated %d instants (%s reference, %d at rest)",
            len(series),
            self._sign_reference.value,
            int(np.count_nonzero(mu == 0.0)),
        )
        return EstimateSeries(
            times=series.times,
            w_est=w_est,
            method=self.method,
            projections=ProjectionRecord(
                residuals=residuals, mu_star=mu, eigenvalues=eigenvalues
            ),
        )


class PlainSqrtAOEstimator(Estimator):
    """
    Square-root estimator without the projection step.

    An instant is only usable when its symmetric part is already a skew
    square within ``tol``; other instants count as failures and repeat the
    previous estimate.
    """

    def __init__(self, tol: float = MEMBERSHIP_TOLERANCE) -> None:
        self._tol = tol

    @property
    def method(self) -> EstimationMethod:
        return EstimationMethod.PLAIN_SQRT_AO

    def run(self, series: MeasurementSeries, w0: Any) -> EstimateSeries:
        w_start = as_vector3(w0)
        b_tilde = _sym_stack(np.asarray(series.p_tilde))
        members, n_factors, eigenvalues = is_member_batch(b_tilde, self._tol)
        mu = _pair_mean(eigenvalues)
        roots = _root_vectors(n_factors, mu)
        signed = _choose_signs(
            np.asarray(series.times),
            roots,
            (mu < 0.0) & members,
            np.zeros_like(roots),
            w_start,
            SignReference.PREVIOUS,
        )
        w_est = np.empty_like(signed)
        last = np.array(w_start, dtype=float)
        for i, ok in enumerate(members.tolist()):
            if ok:
                last = signed[i]
            w_est[i] = last
        failures = int(np.count_nonzero(~members))
        if failures:
            logger.warning(
                "%d of %d instants are not skew squares; estimate carried over",
                failures,
                len(series),
            )
        return EstimateSeries(
            times=series.times, w_est=w_est, method=self.method, failures=failures
        )


class AOIntegrationEstimator(Estimator):
    """Trapezoidal time integration of the measured angular acceleration."""

    @property
    def method(self) -> EstimationMethod:
        return EstimationMethod.AO_INTEGRATION

    def run(self, series: MeasurementSeries, w0: Any) -> EstimateSeries:
        w_start = as_vector3(w0)
        if len(series) < 2:
            raise DataError("integration needs at least two instants")
        accel = _measured_accel(series)
        w_est = w_start + cumulative_trapezoid(
            accel, np.asarray(series.times), axis=0, initial=0.0
        )
        return EstimateSeries(times=series.times, w_est=w_est, method=self.method)


def create_estimator(method: Union[str, EstimationMethod], **options: Any) -> Estimator:
    """
    Build the estimator for ``method``.

    Options: ``sign_reference`` for sqrt_ao, ``tol`` for plain_sqrt_ao.
    """
    if isinstance(method, str):
        method = EstimationMethod.from_string(method)
    if method is EstimationMethod.SQRT_AO:
        return SqrtAOEstimator(options.get("sign_reference", SignReference.PROPAGATED))
    if method is EstimationMethod.PLAIN_SQRT_AO:
        return PlainSqrtAOEstimator(options.get("tol", MEMBERSHIP_TOLERANCE))
    return AOIntegrationEstimator()


def run_sqrt_ao(
    series: MeasurementSeries,
    w0: Any,
    sign_reference: Union[str, SignReference] = SignReference.PROPAGATED,
) -> EstimateSeries:
    """
    Run the projected square-root estimator from ``w0``.

    The root at the first instant is matched against ``ast(w0)``. Later roots
    follow ``sign_reference``; see :class:`SqrtAOEstimator`.
    """
    return SqrtAOEstimator(sign_reference).run(series, w0)


def run_ao_baseline(series: MeasurementSeries, w0: Any) -> EstimateSeries:
    return AOIntegrationEstimator().run(series, w0)
