"""Tests for the angular velocity estimators."""

import numpy as np
import pytest

from skewsq.core.errors import DataError
from skewsq.core.models import (
    EstimationMethod,
    MeasurementSeries,
    MotionProfile,
    ProfileKind,
    SignReference,
)
from skewsq.estimators import (
    AOIntegrationEstimator,
    PlainSqrtAOEstimator,
    SqrtAOEstimator,
    create_estimator,
    extract_W,
    project_B,
    project_batch,
    run_ao_baseline,
    run_sqrt_ao,
)
from skewsq.linalg import ast, frobenius_inner
from skewsq.metrics import error_trend, relative_l2_error
from skewsq.skew_square import approximate
from skewsq.synth import generate, time_grid

from tests.conftest import EXAMPLE_B, EXAMPLE_U_STAR

E1, E2, E3 = np.eye(3)


def _noiseless(kind: ProfileKind, axis=None, rate: float = 1600.0) -> MeasurementSeries:
    kwargs = {} if axis is None else {"axis": np.asarray(axis, dtype=float)}
    profile = MotionProfile(kind, tau1=kind.default_tau1, **kwargs)
    return generate(profile, time_grid(3.0 * profile.tau1, rate))


class TestProjection:
    """Projection of B~ onto the 3x3 skew squares."""

    def test_skew_square_is_fixed(self):
        b = np.diag([-4.0, -4.0, 0.0])
        projection = project_B(b)
        assert np.allclose(projection.b_hat, b, atol=1e-12)
        assert projection.mu_star == pytest.approx(-4.0)

    def test_positive_definite_projects_to_zero(self):
        projection = project_B(np.diag([1.0, 2.0, 3.0]))
        assert np.array_equal(projection.b_hat, np.zeros((3, 3)))
        assert projection.mu_star == 0.0

    def test_worked_example(self):
        projection = project_B(EXAMPLE_B)
        assert projection.mu_star == pytest.approx(-5.0, rel=1e-12)
        assert np.allclose(projection.b_hat, EXAMPLE_U_STAR, atol=1e-12)

    def test_agrees_with_general_approximant(self, rng):
        for _ in range(50):
            g = rng.normal(size=(3, 3))
            b = (g + g.T) / 2.0
            assert np.allclose(project_B(b).b_hat, approximate(b).u_star, atol=1e-12)

    def test_rejects_other_dimensions(self):
        with pytest.raises(DataError):
            project_B(np.eye(2))

    def test_batch_shapes(self, rng):
        b_hat, n_factors, mu, eigenvalues = project_batch(rng.normal(size=(8, 3, 3)))
        assert b_hat.shape == (8, 3, 3)
        assert n_factors.shape == (8, 3, 3)
        assert mu.shape == (8,)
        assert eigenvalues.shape == (8, 3)


class TestExtractW:
    """Signed roots of projected matrices."""

    @pytest.fixture
    def n_factor(self):
        return np.column_stack([E3, E1, E2])

    def test_root_follows_reference(self, n_factor):
        root = extract_W(n_factor, -4.0, reference=ast([0.0, 0.0, 1.9]))
        assert np.allclose(root, ast([0.0, 0.0, 2.0]), atol=1e-15)

    def test_opposite_reference_flips(self, n_factor):
        root = extract_W(n_factor, -4.0, reference=ast([0.0, 0.0, -1.9]))
        assert np.allclose(root, ast([0.0, 0.0, -2.0]), atol=1e-15)

    def test_orthogonal_reference_keeps_positive_branch(self, n_factor):
        root = extract_W(n_factor, -4.0, reference=ast([1.0, 0.0, 0.0]))
        assert np.allclose(root, ast([0.0, 0.0, 2.0]), atol=1e-15)

    def test_zero_mu(self, n_factor):
        assert np.array_equal(extract_W(n_factor, 0.0), np.zeros((3, 3)))

    def test_positive_mu(self, n_factor):
        with pytest.raises(DataError):
            extract_W(n_factor, 1.0)

    def test_root_squares_to_projection(self, rng):
        for _ in range(20):
            g = rng.normal(size=(3, 3))
            projection = project_B((g + g.T) / 2.0)
            root = extract_W(projection.n_factor, projection.mu_star)
            assert np.allclose(root @ root, projection.b_hat, atol=1e-12)


class TestSqrtAOEstimator:
    """Projected square-root estimation."""

    def test_constant_rate_is_exact(self):
        series = _noiseless(ProfileKind.CONSTANT)
        estimate = run_sqrt_ao(series, series.truth_w[0])
        assert np.allclose(estimate.w_est, series.truth_w, atol=1e-7)
        assert estimate.method is EstimationMethod.SQRT_AO

    def test_zero_series(self):
        series = MeasurementSeries(times=np.arange(5.0), p_tilde=np.zeros((5, 3, 3)))
        estimate = run_sqrt_ao(series, [0.0, 0.0, 1.0])
        assert np.array_equal(estimate.w_est, np.zeros((5, 3)))

    @pytest.mark.parametrize(
        "kind, axis",
        [
            (ProfileKind.PUNCTUATED, None),
            (ProfileKind.OSCILLATORY, None),
            (ProfileKind.CONSTANT, None),
            (ProfileKind.PUNCTUATED, [0.0, 0.0, 1.0]),
        ],
    )
    def test_noiseless_profiles(self, kind, axis):
        series = _noiseless(kind, axis)
        estimate = run_sqrt_ao(series, series.truth_w[0])
        assert relative_l2_error(estimate, series.truth_w) <= 1e-6

    def test_previous_reference_loses_track_of_reversals(self):
        series = _noiseless(ProfileKind.OSCILLATORY)
        estimate = run_sqrt_ao(series, series.truth_w[0], SignReference.PREVIOUS)
        assert relative_l2_error(estimate, series.truth_w) > 0.1

    @pytest.mark.parametrize(
        "kind, sigma", [(ProfileKind.CONSTANT, 20.0), (ProfileKind.OSCILLATORY, 0.0)]
    )
    def test_previous_reference_keeps_sign_continuity(self, kind, sigma):
        profile = MotionProfile(kind)
        series = generate(profile, time_grid(2.0, 400.0), noise_sigma=sigma, seed=5)
        estimate = run_sqrt_ao(series, series.truth_w[0], "previous")
        w = estimate.w_est
        for i in range(1, len(w)):
            if np.any(w[i]) and np.any(w[i - 1]):
                assert frobenius_inner(ast(w[i]), ast(w[i - 1])) >= 0.0

    def test_propagated_reference_follows_positive_rate(self):
        series = _noiseless(ProfileKind.PUNCTUATED)
        w = run_sqrt_ao(series, series.truth_w[0]).w_est
        assert np.all(np.einsum("ki,ki->k", w[1:], w[:-1]) > 0.0)

    def test_propagated_reference_flips_with_the_rate(self):
        # the oscillatory rate reverses, so the true roots reverse with it
        series = _noiseless(ProfileKind.OSCILLATORY)
        w = run_sqrt_ao(series, series.truth_w[0]).w_est
        flips = np.einsum("ki,ki->k", w[1:], w[:-1]) < 0.0
        assert flips.any()
        assert np.allclose(w, series.truth_w, atol=1e-6 * np.abs(series.truth_w).max())

    def test_projection_record(self):
        profile = MotionProfile(ProfileKind.PUNCTUATED)
        series = generate(profile, time_grid(1.0, 200.0), noise_sigma=0.5, seed=2)
        estimate = SqrtAOEstimator().run(series, series.truth_w[0])
        record = estimate.projections
        assert record is not None
        assert record.residuals.shape == (201,)
        assert record.eigenvalues.shape == (201, 3)
        assert np.all(record.residuals > 0.0)
        assert np.all(record.mu_star <= 0.0)

    def test_rejects_bad_initial_velocity(self):
        series = _noiseless(ProfileKind.CONSTANT, rate=10.0)
        with pytest.raises(DataError):
            run_sqrt_ao(series, [1.0, 2.0])

    def test_unknown_sign_reference(self):
        with pytest.raises(DataError):
            SqrtAOEstimator("nearest")


class TestAOIntegration:
    """Integration of the measured angular acceleration."""

    def test_constant_rate_stays_at_initial_value(self):
        series = _noiseless(ProfileKind.CONSTANT, rate=100.0)
        w0 = series.truth_w[0]
        estimate = run_ao_baseline(series, w0)
        assert np.allclose(estimate.w_est, np.broadcast_to(w0, (len(series), 3)), atol=1e-9)

    def test_second_order_convergence(self):
        coarse = _noiseless(ProfileKind.PUNCTUATED, rate=400.0)
        fine = _noiseless(ProfileKind.PUNCTUATED, rate=1600.0)
        coarse_error = relative_l2_error(
            run_ao_baseline(coarse, coarse.truth_w[0]), coarse.truth_w
        )
        fine_error = relative_l2_error(run_ao_baseline(fine, fine.truth_w[0]), fine.truth_w)
        assert coarse_error < 1e-3
        assert fine_error < coarse_error / 8.0

    def test_needs_two_instants(self):
        series = MeasurementSeries(times=[0.0], p_tilde=np.zeros((1, 3, 3)))
        with pytest.raises(DataError):
            AOIntegrationEstimator().run(series, np.zeros(3))


class TestPlainSqrtAO:
    """Square-root estimation without projection."""

    def test_noiseless_series_has_no_failures(self):
        series = _noiseless(ProfileKind.CONSTANT, rate=100.0)
        estimate = PlainSqrtAOEstimator().run(series, series.truth_w[0])
        assert estimate.failures == 0
        assert np.allclose(estimate.w_est, series.truth_w, atol=1e-7)

    def test_noisy_series_fails_and_carries_estimate(self):
        profile = MotionProfile(ProfileKind.CONSTANT)
        series = generate(profile, time_grid(1.0, 100.0), noise_sigma=0.5, seed=1)
        w0 = series.truth_w[0]
        estimate = PlainSqrtAOEstimator().run(series, w0)
        assert estimate.failures > 0.9 * len(series)
        assert np.array_equal(estimate.w_est[0], w0)


class TestCreateEstimator:
    """Estimator factory."""

    @pytest.mark.parametrize(
        "name, expected",
        [
            ("sqrt_ao", SqrtAOEstimator),
            ("ao", AOIntegrationEstimator),
            ("ao_integration", AOIntegrationEstimator),
            ("plain_sqrt_ao", PlainSqrtAOEstimator),
        ],
    )
    def test_names(self, name, expected):
        assert isinstance(create_estimator(name), expected)

    def test_sign_reference_option(self):
        estimator = create_estimator("sqrt_ao", sign_reference=SignReference.PREVIOUS)
        assert estimator.sign_reference is SignReference.PREVIOUS

    def test_unknown(self):
        with pytest.raises(DataError):
            create_estimator("kalman")


@pytest.mark.slow
class TestNoisyConstantRate:
    """
    Over twenty noise seeds on a constant-rate trial, the square-root error
    does not grow with the window while the integration error does.
    """

    SIGMA = 50.0
    SEEDS = range(20)

    @pytest.fixture(scope="class")
    def trials(self):
        profile = MotionProfile(ProfileKind.CONSTANT)
        horizon = 3.0 * 5.81
        times = time_grid(2.0 * horizon, 1600.0)
        results = []
        for seed in self.SEEDS:
            series = generate(profile, times, noise_sigma=self.SIGMA, seed=seed)
            w0 = series.truth_w[0]
            sqrt_ao = run_sqrt_ao(series, w0)
            ao = run_ao_baseline(series, w0)
            truth = series.truth_w
            short = sqrt_ao.window(horizon)
            results.append(
                {
                    "sqrt_short": relative_l2_error(short, truth[: len(short)]),
                    "sqrt_long": relative_l2_error(sqrt_ao, truth),
                    "ao_short": relative_l2_error(ao.window(horizon), truth[: len(short)]),
                    "ao_long": relative_l2_error(ao, truth),
                    "sqrt_trend": error_trend(sqrt_ao, truth),
                }
            )
        return results

    def test_sqrt_ao_error_is_stable(self, trials):
        short = np.median([t["sqrt_short"] for t in trials])
        long = np.median([t["sqrt_long"] for t in trials])
        assert 0.0 < short < 0.2
        assert long == pytest.approx(short, rel=0.25)

    def test_ao_error_grows(self, trials):
        short = np.median([t["ao_short"] for t in trials])
        long = np.median([t["ao_long"] for t in trials])
        assert long > short

    def test_sqrt_ao_error_has_no_trend(self, trials):
        flat = sum(1 for t in trials if t["sqrt_trend"].pvalue > 0.01)
        assert flat >= len(trials) // 2
