"""Module building the training and test splits of a task."""

import pathlib
import typing

import numpy as np

from ernn.helpers.exceptions import RejectedInputException
from ernn.helpers.type_hints import Array
from ernn.numerics.rng import Rng
from ernn.tasks.csv_io import load_csv_sequences
from ernn.tasks.dataset import (
    SequenceDataset,
    TaskKinds,
    TaskSpec,
    split_normalize,
)
from ernn.tasks.generators import gen_noise_padded, gen_random_walk


def load_task(
    spec: TaskSpec, rng: Rng
) -> typing.Tuple[SequenceDataset, SequenceDataset]:
    """Build the splits of a classification task.

    Generated tasks draw the training split, then the test split. CSV tasks
    are shuffled, split and standardized with the training statistics.

    Args:
        spec (TaskSpec): Task
        rng (Rng): Generator

    Raises:
        RejectedInputException: The task is not a classification task.

    Returns:
        typing.Tuple[SequenceDataset, SequenceDataset]: Training and test
            splits
    """
    if spec.kind == TaskKinds.NOISE_PADDED:
        train = gen_noise_padded(spec, spec.train_size, rng)
        test = gen_noise_padded(spec, spec.test_size, rng)

        return train, test

    if spec.kind == TaskKinds.CSV:
        data = load_csv_sequences(
            pathlib.Path(spec.csv_path),
            spec.seq_len,
            spec.input_dim,
            header=spec.csv_header,
        )

        return split_normalize(data, spec.train_fraction, rng)

    raise RejectedInputException(f"{spec.kind.value} is not a labelled task")


def sample_batch(spec: TaskSpec, size: int, rng: Rng) -> Array:
    """Draw a batch of input sequences from a task, labels dropped.

    Generated tasks draw fresh sequences. CSV tasks cycle through the
    shuffled and standardized training split.

    Args:
        spec (TaskSpec): Task
        size (int): Batch size
        rng (Rng): Generator

    Raises:
        RejectedInputException: The batch size is not positive.

    Returns:
        Array: size×T×d sequences
    """
    if size < 1:
        raise RejectedInputException(f"batch of {size} sequences")

    if spec.kind == TaskKinds.NOISE_PADDED:
        return gen_noise_padded(spec, size, rng).sequences

    if spec.kind == TaskKinds.RANDOM_WALK:
        return np.stack(
            [gen_random_walk(spec, rng, spec.seq_len) for _ in range(size)]
        )

    train, _ = load_task(spec, rng)
    rows = [index % len(train) for index in range(size)]

    return train.sequences[rows]
