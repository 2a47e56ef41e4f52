"""Shared fixtures for the skewsq test suite."""

import os

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("skewsq", deadline=None)
settings.load_profile("skewsq")

# 3x3 worked example: symmetric part has eigenvalues 2, -4, -6
EXAMPLE_A = np.array(
    [
        [-1.0, 4.0, 2.0],
        [2.0, -1.0, 3.0],
        [-2.0, -3.0, -6.0],
    ]
)
EXAMPLE_B = np.array(
    [
        [-1.0, 3.0, 0.0],
        [3.0, -1.0, 0.0],
        [0.0, 0.0, -6.0],
    ]
)
EXAMPLE_U_STAR = np.array(
    [
        [-2.5, 2.5, 0.0],
        [2.5, -2.5, 0.0],
        [0.0, 0.0, -5.0],
    ]
)

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def random_skew(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n))
    return (g - g.T) / 2.0


def random_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n))
    return (g + g.T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def write_file(tmp_path):
    """Write text content into the test directory and return its path."""

    def _write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def example_matrix_file(write_file):
    rows = "\n".join(",".join(f"{v:g}" for v in row) for row in EXAMPLE_A)
    return write_file("example.csv", rows + "\n")
