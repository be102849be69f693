"""pytest package configuration."""
import typing

import pytest

from ernn.autodiff import ActivationKinds
from ernn.cells import ModelSpec
from ernn.numerics.rng import Rng
from ernn.tasks import SequenceDataset, TaskSpec, gen_noise_padded
from ernn.train import TrainConfig

Splits = typing.Tuple[SequenceDataset, SequenceDataset]

SMALL_TASK = TaskSpec(seq_len=5, input_dim=2, informative_steps=2)
SMALL_MODEL = ModelSpec(
    activation=ActivationKinds.TANH,
    hidden_dim=4,
    input_dim=2,
    rank=2,
    k_steps=2,
)


@pytest.fixture(name="small_config")
def fixture_small_config() -> TrainConfig:
    """Build the settings of a short run on a small ERNN.

    Returns:
        TrainConfig: Settings with 8 sequences per batch and 2 epochs
    """
    return TrainConfig(
        model=SMALL_MODEL,
        task=SMALL_TASK,
        lr=1e-2,
        batch_size=8,
        epochs=2,
        lr_halve_every=1,
        seed=5,
    )


@pytest.fixture(name="small_splits")
def fixture_small_splits() -> Splits:
    """Generate a small noise padded training split and test split.

    Returns:
        Splits: 16 training and 8 test sequences of 5 steps
    """
    rng = Rng(11)

    return (
        gen_noise_padded(SMALL_TASK, 16, rng),
        gen_noise_padded(SMALL_TASK, 8, rng),
    )
