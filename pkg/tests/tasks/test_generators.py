"""Module for testing the synthetic task generators."""

import dataclasses

import numpy as np
import pytest

from ernn.helpers.exceptions import RejectedInputException
from ernn.numerics.rng import Rng
from ernn.tasks import TaskKinds, TaskSpec, gen_noise_padded, gen_random_walk
from ernn.tasks.generators import class_means

PADDED = TaskSpec(seq_len=200, informative_steps=10, input_dim=4)
WALK = TaskSpec(kind=TaskKinds.RANDOM_WALK, input_dim=1, informative_steps=0)


def __segment_accuracy(sequences: np.ndarray, labels: np.ndarray) -> float:
    # Class 1 has +0.5 in every feature
    predictions = sequences[:, :10, 0].mean(axis=1) > 0

    return float(np.mean(predictions == labels.astype(bool)))


def test_padding_moments() -> None:
    """Test that the padded steps look like standard Gaussian noise."""
    data = gen_noise_padded(PADDED, 500, Rng(60))
    padding = data.sequences[:, 10:, :]

    assert abs(padding.mean()) <= 0.1, "The noise is not centred."
    assert 0.8 <= padding.var() <= 1.2, "The noise variance is not 1."


def test_balanced_labels() -> None:
    """Test that the classes are equally represented."""
    data = gen_noise_padded(PADDED, 500, Rng(61))

    assert np.array_equal(
        np.bincount(data.labels), [250, 250]
    ), "The classes are unbalanced."


def test_label_is_localized() -> None:
    """Test that only the informative segment predicts the label."""
    data = gen_noise_padded(PADDED, 500, Rng(62))
    assert (
        __segment_accuracy(data.sequences, data.labels) >= 0.99
    ), "The informative segment is not separable."

    shuffled = data.sequences.copy()
    order = Rng(63).permutation(len(data))
    shuffled[:, :10, :] = data.sequences[order, :10, :]
    assert (
        __segment_accuracy(shuffled, data.labels) <= 0.6
    ), "The label leaked outside the informative segment."


def test_noiseless_padding() -> None:
    """Test that a zero noise level pads with exact zeros."""
    spec = dataclasses.replace(
        PADDED, seq_len=12, informative_steps=5, noise_std=0.0
    )
    data = gen_noise_padded(spec, 20, Rng(64))

    assert np.all(data.sequences[:, 5:, :] == 0), "Noise was padded."
    assert np.all(
        data.sequences[:, :5, :] != 0
    ), "The informative segment is empty."


def test_random_offset() -> None:
    """Test that the segment can start anywhere."""
    spec = dataclasses.replace(
        PADDED,
        seq_len=12,
        informative_steps=3,
        noise_std=0.0,
        random_offset=True,
    )
    data = gen_noise_padded(spec, 50, Rng(65))

    starts = [
        int(np.flatnonzero(np.any(sequence != 0, axis=1))[0])
        for sequence in data.sequences
    ]
    assert max(starts) > 0, "Every segment starts the sequence."
    for sequence, start in zip(data.sequences, starts):
        active = np.any(sequence != 0, axis=1)
        assert (
            np.count_nonzero(active) == 3 and active[start : start + 3].all()
        ), "The segment is not contiguous."


def test_reproducible_generation() -> None:
    """Test that generators are pure functions of their seed."""
    first = gen_noise_padded(PADDED, 10, Rng(66))
    second = gen_noise_padded(PADDED, 10, Rng(66))
    assert np.array_equal(
        first.sequences, second.sequences
    ), "The sequences differ."
    assert np.array_equal(first.labels, second.labels), "The labels differ."

    assert np.array_equal(
        gen_random_walk(WALK, Rng(67)), gen_random_walk(WALK, Rng(67))
    ), "The walks differ."


def test_random_walk() -> None:
    """Test the length and the increments of the random walk."""
    walk = gen_random_walk(WALK, Rng(68))
    assert walk.shape == (1000, 1), "The walk has not 1000 steps."

    long_walk = gen_random_walk(WALK, Rng(69), steps=100_000)
    increments = np.diff(long_walk[:, 0], prepend=0.0)
    assert (
        9.5 <= increments.var() <= 10.5
    ), "The increments do not have variance 10."

    still = dataclasses.replace(WALK, walk_variance=0.0)
    assert np.all(
        gen_random_walk(still, Rng(70)) == 0
    ), "A zero variance walk moved."


def test_class_means() -> None:
    """Test the binary coding of the class means."""
    means = class_means(4, 2)

    assert np.array_equal(
        means, [[-0.5, -0.5], [0.5, -0.5], [-0.5, 0.5], [0.5, 0.5]]
    ), "The means do not follow the class bits."
    assert np.array_equal(
        class_means(2, 3), [[-0.5, -0.5, -0.5], [0.5, 0.5, 0.5]]
    ), "Two classes are not separated on every feature."
    assert np.array_equal(
        class_means(3, 3),
        [[-0.5, -0.5, -0.5], [0.5, -0.5, 0.5], [-0.5, 0.5, -0.5]],
    ), "The class bits do not repeat over the features."

    with pytest.raises(RejectedInputException) as execution:
        class_means(5, 2)
    assert execution.value, "Five classes were coded on two bits."


def test_invalid_tasks() -> None:
    """Test the rejection of undecodable tasks."""
    with pytest.raises(RejectedInputException) as execution:
        gen_noise_padded(
            dataclasses.replace(PADDED, informative_steps=0), 4, Rng(71)
        )
    assert execution.value, "A task without informative step was generated."

    with pytest.raises(RejectedInputException) as execution:
        gen_noise_padded(WALK, 4, Rng(72))
    assert execution.value, "A walk was generated as a padded task."

    with pytest.raises(RejectedInputException) as execution:
        gen_random_walk(PADDED, Rng(73))
    assert execution.value, "A padded task was generated as a walk."

    with pytest.raises(RejectedInputException) as execution:
        TaskSpec(seq_len=5, informative_steps=6)
    assert execution.value, "More informative steps than steps passed."
