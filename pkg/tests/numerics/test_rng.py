"""Module for testing the seedable random number generator."""

import numpy as np
import pytest

from ernn.helpers.exceptions import RejectedInputException
from ernn.numerics.rng import Rng, gaussian


def test_same_seed_same_stream() -> None:
    """Test that two generators with the same seed agree."""
    first, second = Rng(42), Rng(42)

    assert [first.next_u64() for _ in range(10)] == [
        second.next_u64() for _ in range(10)
    ], "The streams of equal seeds differ."
    assert Rng(1).next_u64() != Rng(2).next_u64(), "Seeds are ignored."


def test_state_restore() -> None:
    """Test that a stored state continues the same stream."""
    rng = Rng(7)
    rng.gaussian(5)
    restored = Rng.from_state(7, rng.state)

    assert np.array_equal(
        rng.gaussian(9), restored.gaussian(9)
    ), "The restored generator diverged."


def test_invalid_states() -> None:
    """Test the rejection of negative seeds and invalid states."""
    with pytest.raises(RejectedInputException) as execution:
        Rng(-1)
    assert execution.value, "A negative seed was accepted."

    with pytest.raises(RejectedInputException) as execution:
        Rng.from_state(0, (0, 0, 0, 0))
    assert execution.value, "An all-zero state was accepted."


def test_uniform_ranges() -> None:
    """Test the bounds of the uniform draws."""
    rng = Rng(3)
    samples = rng.uniform(1000, -2.0, 3.0)

    assert np.all(samples >= -2.0) and np.all(
        samples < 3.0
    ), "A uniform sample is out of range."
    assert all(
        0 <= rng.below(7) < 7 for _ in range(200)
    ), "A bounded integer is out of range."

    with pytest.raises(RejectedInputException) as execution:
        rng.below(0)
    assert execution.value, "A zero bound was accepted."


def test_permutation() -> None:
    """Test that a permutation contains every index once."""
    permutation = Rng(11).permutation(50)

    assert sorted(permutation) == list(range(50)), "Indices were lost."
    assert permutation != list(range(50)), "The indices were not shuffled."


def test_gaussian_moments() -> None:
    """Test the mean and variance of the normal draws."""
    samples = gaussian(Rng(5), 20001, 2.0)

    assert len(samples) == 20001, "The odd sample count was not honoured."
    assert abs(np.mean(samples)) < 0.05, "The mean is far from 0."
    assert np.var(samples) == pytest.approx(
        4.0, rel=0.05
    ), "The variance is far from std²."

    matrix = Rng(5).gaussian_matrix(3, 4)
    assert matrix.shape == (3, 4), "The matrix shape is wrong."


def test_large_sample_moments() -> None:
    """Test the moments of 10⁵ standard normal draws and zero spread."""
    samples = gaussian(Rng(42), 100000, 1.0)

    assert abs(np.mean(samples)) <= 0.02, "The sample mean is too far."
    assert 0.98 <= np.std(samples) <= 1.02, "The sample std is too far."
    assert np.array_equal(
        samples[:10], gaussian(Rng(42), 10, 1.0)
    ), "The same seed gave other samples."
    assert not np.any(gaussian(Rng(1), 8, 0.0)), "std = 0 gave noise."
