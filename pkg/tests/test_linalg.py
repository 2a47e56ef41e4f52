"""Tests for the dense matrix helpers."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from skewsq.core.errors import DataError
from skewsq.linalg import (
    as_matrix,
    as_vector3,
    ast,
    ast_batch,
    frobenius_inner,
    frobenius_norm,
    random_orthogonal,
    skew_part,
    star,
    star_batch,
    sym_part,
)

from tests.conftest import EXAMPLE_A, EXAMPLE_B, EXAMPLE_U_STAR

vectors = arrays(np.float64, (3,), elements=st.floats(-1e3, 1e3))


class TestFrobenius:
    """Inner product and norm."""

    def test_inner_product_examples(self):
        assert frobenius_inner(np.eye(2), np.eye(2)) == 2.0
        assert frobenius_inner(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])) == 11.0

    def test_symmetric_and_skew_are_orthogonal(self):
        s = np.array([[1.0, 2.0], [2.0, 3.0]])
        k = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert frobenius_inner(s, k) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DataError):
            frobenius_inner(np.eye(2), np.eye(3))

    def test_norm_examples(self):
        assert frobenius_norm(np.zeros((4, 4))) == 0.0
        assert frobenius_norm(np.eye(3)) == pytest.approx(math.sqrt(3.0), rel=1e-15)

    def test_example_residual_of_symmetric_part(self):
        # ||U* - B|| equals ||Lambda - D*|| = ||(2, 1, -1)||
        assert frobenius_norm(EXAMPLE_U_STAR - EXAMPLE_B) == pytest.approx(math.sqrt(6.0))


class TestSymSkewSplit:
    """Symmetric and skew-symmetric parts."""

    def test_example_split(self):
        assert np.array_equal(sym_part(EXAMPLE_A), EXAMPLE_B)
        expected_skew = np.array([[0.0, 1.0, 2.0], [-1.0, 0.0, 3.0], [-2.0, -3.0, 0.0]])
        assert np.array_equal(skew_part(EXAMPLE_A), expected_skew)

    def test_symmetric_input_is_unchanged(self):
        s = np.array([[1.0, 2.0], [2.0, 5.0]])
        assert np.array_equal(sym_part(s), s)
        assert np.array_equal(skew_part(s), np.zeros((2, 2)))

    def test_single_off_diagonal_entry(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert np.array_equal(sym_part(a), [[0.0, 0.5], [0.5, 0.0]])
        assert np.array_equal(skew_part(a), [[0.0, 0.5], [-0.5, 0.0]])

    def test_parts_are_orthogonal(self, rng):
        for n in range(1, 8):
            a = rng.normal(size=(n, n))
            assert frobenius_inner(sym_part(a), skew_part(a)) == pytest.approx(0.0, abs=1e-12)


class TestAxialMaps:
    """The star and ast maps between skew matrices and vectors."""

    def test_star_examples(self):
        w = np.array([[0.0, -3.0, 2.0], [3.0, 0.0, -1.0], [-2.0, 1.0, 0.0]])
        assert np.array_equal(star(w), [1.0, 2.0, 3.0])
        assert np.array_equal(star(np.zeros((3, 3))), np.zeros(3))

    def test_star_rejects_non_skew(self):
        with pytest.raises(DataError):
            star(np.eye(3))

    def test_star_rejects_wrong_shape(self):
        with pytest.raises(DataError):
            star(np.zeros((2, 2)))

    def test_ast_examples(self):
        expected = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        assert np.array_equal(ast([0.0, 0.0, 1.0]), expected)
        assert np.array_equal(ast(np.zeros(3)), np.zeros((3, 3)))

    def test_ast_is_cross_product(self, rng):
        v = rng.normal(size=3)
        x = rng.normal(size=3)
        assert np.allclose(ast(v) @ x, np.cross(v, x), atol=1e-14)

    def test_square_of_ast(self):
        v = np.array([1.0, 2.0, 2.0])
        unit = v / 3.0
        expected = -9.0 * (np.eye(3) - np.outer(unit, unit))
        assert np.allclose(ast(v) @ ast(v), expected, atol=1e-12)

    @given(vectors)
    def test_star_inverts_ast(self, v):
        assert np.array_equal(star(ast(v)), v)

    @given(vectors, vectors)
    def test_inner_product_of_skew_matrices(self, a, b):
        lhs = frobenius_inner(ast(a), ast(b))
        assert lhs == pytest.approx(2.0 * float(np.dot(a, b)), rel=1e-9, abs=1e-6)

    def test_batch_maps_match_single(self, rng):
        v = rng.normal(size=(20, 3))
        mats = ast_batch(v)
        for i in range(20):
            assert np.array_equal(mats[i], ast(v[i]))
        assert np.array_equal(star_batch(mats), v)


class TestValidation:
    """Input validation helpers."""

    def test_as_matrix_rejects_non_square(self):
        with pytest.raises(DataError):
            as_matrix([[1.0, 2.0]])

    def test_as_matrix_rejects_nan(self):
        with pytest.raises(DataError):
            as_matrix([[float("nan")]])

    def test_as_matrix_is_read_only_copy(self):
        source = np.eye(2)
        matrix = as_matrix(source)
        source[0, 0] = 5.0
        assert matrix[0, 0] == 1.0
        with pytest.raises(ValueError):
            matrix[0, 0] = 2.0

    def test_as_vector3_shape(self):
        with pytest.raises(DataError):
            as_vector3([1.0, 2.0])


class TestRandomOrthogonal:
    """Random orthogonal matrices."""

    def test_one_by_one(self):
        q = random_orthogonal(1, seed=4)
        assert abs(q[0, 0]) == 1.0

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_orthogonality(self, n):
        q = random_orthogonal(n, seed=n)
        assert np.allclose(q.T @ q, np.eye(n), atol=1e-12)
        assert frobenius_norm(q) == pytest.approx(math.sqrt(n), rel=1e-12)

    def test_deterministic_per_seed(self):
        assert np.array_equal(random_orthogonal(4, seed=11), random_orthogonal(4, seed=11))
        assert not np.array_equal(random_orthogonal(4, seed=11), random_orthogonal(4, seed=12))

    def test_both_determinants_reachable(self):
        dets = {round(float(np.linalg.det(random_orthogonal(3, seed=s)))) for s in range(40)}
        assert dets == {-1, 1}

    def test_rejects_empty_dimension(self):
        with pytest.raises(DataError):
            random_orthogonal(0)


@settings(max_examples=50)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2**32 - 1))
def test_orthogonal_preserves_frobenius_norm(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    q = random_orthogonal(n, seed=seed)
    assert frobenius_norm(q @ a @ q.T) == pytest.approx(frobenius_norm(a), rel=1e-10)
