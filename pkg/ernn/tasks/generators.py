"""Module generating the synthetic long-term dependency tasks."""

import math

import numpy as np

from ernn.helpers.exceptions import RejectedInputException
from ernn.helpers.type_hints import Array
from ernn.numerics.rng import Rng
from ernn.tasks.dataset import SequenceDataset, TaskKinds, TaskSpec

CLASS_MEAN_MAGNITUDE = 0.5
JITTER_STD = 0.1
DEFAULT_WALK_STEPS = 1000


def class_means(classes: int, input_dim: int) -> Array:
    """Build the mean vector of every class from its binary code.

    The code has b = ceil(log2 C) bits and feature j carries bit j mod b as
    +0.5 or -0.5, so every feature separates some classes and two classes
    differ by at least 1.0 in some feature. Two classes sit at -0.5·1 and
    +0.5·1.

    Args:
        classes (int): Number of classes C, at most 2^d
        input_dim (int): Feature dimension d

    Raises:
        RejectedInputException: The classes do not fit in d bits.

    Returns:
        Array: C×d means
    """
    if classes > 2**input_dim:
        raise RejectedInputException(
            f"{classes} classes cannot be coded on {input_dim} features"
        )

    width = max(1, (classes - 1).bit_length())
    shifts = np.arange(input_dim) % width
    bits = (np.arange(classes)[:, np.newaxis] >> shifts) & 1

    return CLASS_MEAN_MAGNITUDE * (2.0 * bits - 1.0)


def balanced_labels(n: int, classes: int, rng: Rng) -> np.ndarray:
    """Draw labels whose class counts differ by at most one.

    Args:
        n (int): Label count
        classes (int): Number of classes
        rng (Rng): Generator

    Returns:
        np.ndarray: Shuffled labels
    """
    labels = np.arange(n, dtype=np.int64) % classes

    return labels[rng.permutation(n)]


def gen_noise_padded(spec: TaskSpec, n: int, rng: Rng) -> SequenceDataset:
    """Generate sequences whose label lives in a short informative segment.

    The segment repeats the class mean with N(0, 0.1²) jitter and starts the
    sequence, or starts at a random offset when requested. Every other step
    is N(0, σ²) noise.

    Args:
        spec (TaskSpec): Task
        n (int): Sequence count
        rng (Rng): Generator

    Raises:
        RejectedInputException: The task is not a noise padded one, has no
            informative step or fewer than two classes.

    Returns:
        SequenceDataset: Dataset
    """
    if spec.kind != TaskKinds.NOISE_PADDED:
        raise RejectedInputException(f"{spec.kind.value} task")
    if spec.informative_steps == 0:
        raise RejectedInputException("no informative step")
    if spec.classes < 2:
        raise RejectedInputException(f"{spec.classes} classes")

    means = class_means(spec.classes, spec.input_dim)
    labels = balanced_labels(n, spec.classes, rng)
    steps, width = spec.seq_len, spec.informative_steps
    sequences = np.empty((n, steps, spec.input_dim))

    for sample, label in enumerate(labels):
        offset = rng.below(steps - width + 1) if spec.random_offset else 0
        segment = means[label] + rng.gaussian_matrix(
            width, spec.input_dim, JITTER_STD
        )
        padding = rng.gaussian_matrix(
            steps - width, spec.input_dim, spec.noise_std
        )

        sequences[sample, :offset] = padding[:offset]
        sequences[sample, offset : offset + width] = segment
        sequences[sample, offset + width :] = padding[offset:]

    return SequenceDataset(sequences, labels, spec.classes)


def gen_random_walk(
    spec: TaskSpec, rng: Rng, steps: int = DEFAULT_WALK_STEPS
) -> Array:
    """Generate a scalar Gaussian random walk started at 0.

    Args:
        spec (TaskSpec): Task with a single feature
        rng (Rng): Generator
        steps (int): Walk length. Defaults to 1000.

    Raises:
        RejectedInputException: The task is not a scalar random walk.

    Returns:
        Array: steps×1 positions x_1 to x_steps
    """
    if spec.kind != TaskKinds.RANDOM_WALK or spec.input_dim != 1:
        raise RejectedInputException(
            f"{spec.kind.value} task with {spec.input_dim} features"
        )

    increments = rng.gaussian(steps, math.sqrt(spec.walk_variance))

    return np.cumsum(increments)[:, np.newaxis]
