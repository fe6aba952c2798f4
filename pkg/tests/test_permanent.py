"""Tests for the Ryser permanent."""

import itertools
import math

import numpy as np
import pytest
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from errors import NonSquareMatrixError, SizeLimitError
from linalg.permanent import PermanentSizeError, permanent


def naive_permanent(a):
    k = a.shape[0]
    return sum(math.prod(a[i, p[i]] for i in range(k)) for p in itertools.permutations(range(k)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def test_empty_matrix():
    assert permanent(np.zeros((0, 0))) == 1


def test_small_cases():
    assert permanent([[3.0]]) == 3
    assert permanent([[1, 2], [3, 4]]) == pytest.approx(10)


@pytest.mark.parametrize('k', [1, 2, 3, 4, 5, 6])
def test_all_ones(k):
    assert permanent(np.ones((k, k))) == pytest.approx(math.factorial(k))


def test_identity():
    assert permanent(np.eye(7)) == pytest.approx(1)


@pytest.mark.parametrize('k', [3, 4, 5, 6])
def test_matches_definition(rng, k):
    a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    assert abs(permanent(a) - naive_permanent(a)) < 1e-9


def test_row_scaling(rng):
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    scaled = a.copy()
    scaled[2] *= 3 - 2j
    assert abs(permanent(scaled) - (3 - 2j) * permanent(a)) < 1e-9


def test_transpose_invariance(rng):
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    assert abs(permanent(a) - permanent(a.T)) < 1e-9


def test_size_guard():
    with pytest.raises(PermanentSizeError):
        permanent(np.eye(31))
    with pytest.raises(SizeLimitError):
        permanent(np.eye(5), max_size=4)


def test_non_square():
    with pytest.raises(NonSquareMatrixError):
        permanent(np.ones((2, 3)))


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
