"""Module defining the sequence classification datasets."""

import dataclasses
import typing
from enum import Enum

import numpy as np

from ernn.helpers.exceptions import (
    DimensionMismatchException,
    RejectedInputException,
)
from ernn.helpers.type_hints import Array
from ernn.logger import get_logger
from ernn.numerics.rng import Rng

logger = get_logger()


class TaskKinds(Enum):
    """Enumeration for the dataset sources."""

    NOISE_PADDED = "noise_padded"
    RANDOM_WALK = "random_walk"
    CSV = "csv"


@dataclasses.dataclass(frozen=True)
class TaskSpec:
    """Description of a task, enough to rebuild its datasets from a seed."""

    kind: TaskKinds = TaskKinds.NOISE_PADDED
    seq_len: int = 200
    input_dim: int = 4
    classes: int = 2
    informative_steps: int = 10
    noise_std: float = 1.0
    seed: int = 0
    random_offset: bool = False
    walk_variance: float = 10.0
    csv_path: str = ""
    csv_header: bool = False
    train_size: int = 2000
    test_size: int = 1000
    train_fraction: float = 0.8

    def __post_init__(self) -> None:
        """Validate the description.

        The details of the raised exception start with the offending field.

        Raises:
            RejectedInputException: A field is out of range.
        """
        if self.seq_len < 1:
            raise RejectedInputException(f"seq_len = {self.seq_len}")
        if self.input_dim < 1:
            raise RejectedInputException(f"input_dim = {self.input_dim}")
        if not 0 <= self.informative_steps <= self.seq_len:
            raise RejectedInputException(
                f"informative_steps = {self.informative_steps} out of"
                f" {self.seq_len} steps"
            )
        for field in ("noise_std", "walk_variance"):
            if getattr(self, field) < 0:
                raise RejectedInputException(
                    f"{field} = {getattr(self, field)}"
                )


@dataclasses.dataclass(frozen=True)
class NormalizationStats:
    """Per-feature z-score statistics of a training split."""

    mean: Array
    std: Array
    constant_features: typing.Tuple[int, ...] = ()

    def apply(self, sequences: Array) -> Array:
        """Standardize sequences feature by feature.

        Args:
            sequences (Array): N×T×d sequences

        Returns:
            Array: Standardized copy
        """
        return (sequences - self.mean) / self.std


@dataclasses.dataclass
class SequenceDataset:
    """Class storing N labelled sequences sharing their length and width."""

    sequences: Array
    labels: np.ndarray
    classes: int
    stats: typing.Optional[NormalizationStats] = None

    def __post_init__(self) -> None:
        """Validate the arrays.

        Raises:
            DimensionMismatchException: The shapes are inconsistent.
            RejectedInputException: A label is out of range.
        """
        self.sequences = np.asarray(self.sequences, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)

        if self.sequences.ndim != 3:
            raise DimensionMismatchException(
                f"sequences of shape {self.sequences.shape}"
            )
        if self.labels.shape != (self.sequences.shape[0],):
            raise DimensionMismatchException(
                f"{self.labels.shape} labels for"
                f" {self.sequences.shape[0]} sequences"
            )
        if self.classes < 2:
            raise RejectedInputException(f"{self.classes} classes")
        if self.labels.size and (
            self.labels.min() < 0 or self.labels.max() >= self.classes
        ):
            raise RejectedInputException(
                f"labels outside 0..{self.classes - 1}"
            )

    def __len__(self) -> int:
        """Get the number of sequences.

        Returns:
            int: Size
        """
        return self.sequences.shape[0]

    @property
    def seq_len(self) -> int:
        """Sequence length T."""
        return self.sequences.shape[1]

    @property
    def input_dim(self) -> int:
        """Feature dimension d."""
        return self.sequences.shape[2]

    def subset(self, indices: typing.Sequence[int]) -> "SequenceDataset":
        """Select some sequences, in the given order.

        Args:
            indices (typing.Sequence[int]): Positions

        Returns:
            SequenceDataset: Selection, sharing the statistics
        """
        positions = np.asarray(indices, dtype=np.int64)

        return SequenceDataset(
            sequences=self.sequences[positions],
            labels=self.labels[positions],
            classes=self.classes,
            stats=self.stats,
        )


def fit_normalization(sequences: Array) -> NormalizationStats:
    """Compute per-feature statistics over every sequence and step.

    Args:
        sequences (Array): N×T×d sequences

    Returns:
        NormalizationStats: Statistics, with unit scale on constant features
    """
    flat = sequences.reshape(-1, sequences.shape[-1])
    mean = flat.mean(axis=0)
    std = flat.std(axis=0)

    constant = tuple(int(index) for index in np.flatnonzero(std == 0))
    if constant:
        logger.warning(
            "Features %s have zero variance and are left unscaled.",
            ", ".join(str(index) for index in constant),
        )
        mean[list(constant)] = 0.0
        std[list(constant)] = 1.0

    return NormalizationStats(mean=mean, std=std, constant_features=constant)


def split_normalize(
    data: SequenceDataset, train_fraction: float, rng: Rng
) -> typing.Tuple[SequenceDataset, SequenceDataset]:
    """Shuffle, split and standardize a dataset with train-split statistics.

    Args:
        data (SequenceDataset): Dataset
        train_fraction (float): Share of sequences in the training split
        rng (Rng): Generator used for the shuffle

    Raises:
        RejectedInputException: The fraction is invalid or a split would be
            empty.

    Returns:
        typing.Tuple[SequenceDataset, SequenceDataset]: Training and test
            splits
    """
    if not 0 < train_fraction < 1:
        raise RejectedInputException(f"train fraction {train_fraction}")

    train_size = round(len(data) * train_fraction)
    if train_size in (0, len(data)):
        raise RejectedInputException(
            f"{train_size} of {len(data)} sequences in the training split"
        )

    order = rng.permutation(len(data))
    train = data.subset(order[:train_size])
    test = data.subset(order[train_size:])

    stats = fit_normalization(train.sequences)

    return (
        SequenceDataset(
            stats.apply(train.sequences), train.labels, data.classes, stats
        ),
        SequenceDataset(
            stats.apply(test.sequences), test.labels, data.classes, stats
        ),
    )
