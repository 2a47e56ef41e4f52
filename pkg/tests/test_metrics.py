"""Tests for error metrics and the error-bound checks."""

import math

import numpy as np
import pytest

from skewsq.core.errors import DataError
from skewsq.core.models import EstimateSeries, EstimationMethod, MotionProfile, ProfileKind
from skewsq.linalg import ast
from skewsq.metrics import (
    BOUND_CONSTANTS,
    check_error_bounds,
    compare_estimates,
    component_errors,
    error_trend,
    relative_l2_error,
    run_bounds_monte_carlo,
)


def _estimate(times, w, method=EstimationMethod.SQRT_AO):
    return EstimateSeries(times=np.asarray(times, dtype=float), w_est=w, method=method)


@pytest.fixture
def truth():
    times = np.linspace(0.0, 2.0, 201)
    w = np.column_stack([np.cos(times), np.sin(times), np.ones_like(times)])
    return times, w


class TestRelativeL2Error:
    """Relative L2 error over the estimate window."""

    def test_exact_estimate(self, truth):
        times, w = truth
        assert relative_l2_error(_estimate(times, w), w) == 0.0

    def test_zero_estimate(self, truth):
        times, w = truth
        assert relative_l2_error(_estimate(times, np.zeros_like(w)), w) == pytest.approx(1.0)

    def test_scaled_estimate(self, truth):
        times, w = truth
        assert relative_l2_error(_estimate(times, 1.1 * w), w) == pytest.approx(0.1, rel=1e-12)

    def test_zero_truth(self, truth):
        times, w = truth
        with pytest.raises(DataError):
            relative_l2_error(_estimate(times, w), np.zeros_like(w))

    def test_shape_mismatch(self, truth):
        times, w = truth
        with pytest.raises(DataError):
            relative_l2_error(_estimate(times, w), w[:-1])


class TestComponentErrors:
    """Per-component relative errors."""

    def test_vanishing_component_is_none(self):
        times = np.linspace(0.0, 1.0, 11)
        w = np.column_stack([np.ones(11), np.zeros(11), 2.0 * np.ones(11)])
        est = w + np.array([0.1, 0.3, 0.0])
        errors = component_errors(_estimate(times, est), w)
        assert errors[0] == pytest.approx(0.1)
        assert errors[1] is None
        assert errors[2] == 0.0


class TestErrorTrend:
    """Linear trend of the per-instant error."""

    def test_growing_error(self, truth):
        times, w = truth
        est = w + np.outer(times, [0.0, 0.0, 0.5])
        fit = error_trend(_estimate(times, est), w)
        assert fit.slope == pytest.approx(0.5, rel=1e-9)
        assert fit.intercept == pytest.approx(0.0, abs=1e-9)

    def test_constant_error(self, truth):
        times, w = truth
        fit = error_trend(_estimate(times, w + 0.2), w)
        assert fit.slope == pytest.approx(0.0, abs=1e-12)

    def test_needs_three_instants(self):
        w = np.ones((2, 3))
        with pytest.raises(DataError):
            error_trend(_estimate([0.0, 1.0], w), w)


class TestCheckErrorBounds:
    """Single-instant bound evaluation."""

    def test_exact_root(self):
        w = ast([0.0, 0.0, 2.0])
        b = w @ w
        report = check_error_bounds(w, w, b, b, 3, b_tilde=b)
        assert report.applicable
        assert report.c_n == 8.0
        assert report.holds_angular
        assert report.holds_projection
        assert report.holds_combined

    def test_nearly_orthogonal_roots_are_almost_tight(self):
        # orthogonal unit roots have no positive inner product
        w, w_est = ast([0.0, 0.0, 1.0]), ast([1.0, 0.0, 0.0])
        report = check_error_bounds(w, w_est, w @ w, w_est @ w_est, 3)
        assert not report.applicable
        tilted = ast([1.0, 0.0, 0.01]) / math.hypot(1.0, 0.01)
        report = check_error_bounds(w, tilted, w @ w, tilted @ tilted, 3)
        assert report.applicable
        assert report.holds_angular
        ratio = report.w_error_fourth / (report.c_n * report.b_error_sq)
        assert 0.95 < ratio <= 1.0

    def test_two_by_two_bound(self):
        w = np.array([[0.0, -1.0], [1.0, 0.0]])
        w_est = 1.2 * w
        report = check_error_bounds(w, w_est, w @ w, w_est @ w_est, 2)
        assert report.c_n == BOUND_CONSTANTS[2]
        assert report.w_error_fourth == pytest.approx(0.0064, rel=1e-9)
        assert report.holds_angular

    def test_opposite_roots_not_applicable(self):
        w = ast([0.0, 0.0, 1.0])
        report = check_error_bounds(w, -w, w @ w, w @ w, 3, b_tilde=w @ w)
        assert not report.applicable
        assert report.holds_angular is None
        assert report.holds_projection

    def test_no_constant_for_larger_dimensions(self):
        z = np.zeros((4, 4))
        report = check_error_bounds(z, z, z, z, 4)
        assert not report.applicable
        assert "n=4" in report.reason

    def test_dimension_mismatch(self):
        with pytest.raises(DataError):
            check_error_bounds(np.zeros((3, 3)), np.zeros((2, 2)), np.zeros((3, 3)), np.zeros((3, 3)), 3)

    def test_to_dict(self):
        w = ast([0.0, 0.0, 1.0])
        data = check_error_bounds(w, w, w @ w, w @ w, 3).to_dict()
        assert data["applicable"] is True
        assert data["b_tilde_error"] is None


class TestBoundsMonteCarlo:
    """Random draws of the error bounds."""

    @pytest.mark.parametrize("dimension", [2, 3])
    def test_bounds_hold(self, dimension):
        summary = run_bounds_monte_carlo(draws=10_000, dimension=dimension, seed=1)
        assert summary.draws == 10_000
        assert summary.all_hold
        assert summary.applicable > 9_000
        assert summary.worst_angular_ratio <= 1.0 + 1e-9
        assert summary.worst_projection_ratio <= 1.0 + 1e-9

    def test_reproducible(self):
        first = run_bounds_monte_carlo(draws=200, seed=5).to_dict()
        second = run_bounds_monte_carlo(draws=200, seed=5).to_dict()
        assert first == second

    @pytest.mark.parametrize(
        "kwargs", [{"dimension": 4}, {"draws": 0}, {"scale": 0.0}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(DataError):
            run_bounds_monte_carlo(**kwargs)


class TestCompareEstimates:
    """Scoring several estimates against one truth."""

    def test_report(self, truth):
        times, w = truth
        exact = _estimate(times, w)
        off = _estimate(times, 1.5 * w, EstimationMethod.AO_INTEGRATION)
        profile = MotionProfile(ProfileKind.CONSTANT)
        report = compare_estimates(w, [exact, off], profile=profile, noise_sigma=0.0, seed=3)
        assert report.errors == {"sqrt_ao": 0.0, "ao_integration": pytest.approx(0.5)}
        assert report.estimate_for(EstimationMethod.AO_INTEGRATION) is off
        data = report.to_dict()
        assert data["profile"]["kind"] == "constant"
        assert data["instants"] == 201
        assert data["duration"] == pytest.approx(2.0)
        assert set(data["error_slope"]) == {"sqrt_ao", "ao_integration"}
        assert data["failures"] == {"sqrt_ao": 0, "ao_integration": 0}

    def test_missing_method(self, truth):
        times, w = truth
        report = compare_estimates(w, [_estimate(times, w)])
        with pytest.raises(KeyError):
            report.estimate_for(EstimationMethod.PLAIN_SQRT_AO)

    def test_nothing_to_compare(self, truth):
        _, w = truth
        with pytest.raises(DataError):
            compare_estimates(w, [])
