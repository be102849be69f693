"""Module implementing the Adam optimizer and the learning rate schedule."""

import dataclasses

import numpy as np

from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NumericOverflowException,
    RejectedInputException,
)
from ernn.helpers.type_hints import ArrayDict
from ernn.train.config import TrainConfig

BETA_1 = 0.9
BETA_2 = 0.999
EPSILON = 1e-8


@dataclasses.dataclass
class AdamState:
    """Moment estimates of Adam, one pair of arrays per parameter."""

    first_moment: ArrayDict
    second_moment: ArrayDict
    step: int = 0

    @staticmethod
    def zeros(params: ArrayDict) -> "AdamState":
        """Create the state of a fresh optimizer.

        Args:
            params (ArrayDict): Parameters to optimize

        Returns:
            AdamState: Zero moments
        """
        return AdamState(
            first_moment={
                name: np.zeros_like(value) for name, value in params.items()
            },
            second_moment={
                name: np.zeros_like(value) for name, value in params.items()
            },
        )


def adam_step(
    state: AdamState, params: ArrayDict, gradients: ArrayDict, lr: float
) -> ArrayDict:
    """Apply one bias-corrected Adam update.

    The state is updated in place. Nothing changes when a gradient is not
    finite.

    Args:
        state (AdamState): Optimizer state
        params (ArrayDict): Parameters
        gradients (ArrayDict): Gradients, by parameter name
        lr (float): Learning rate

    Raises:
        DimensionMismatchException: A gradient does not match its parameter.
        NumericOverflowException: A gradient is not finite.

    Returns:
        ArrayDict: Updated parameters
    """
    for name, value in params.items():
        gradient = gradients.get(name)
        if gradient is None or np.shape(gradient) != value.shape:
            raise DimensionMismatchException(
                f"gradient of {name}: {np.shape(gradient)}, expected"
                f" {value.shape}"
            )
        if not np.all(np.isfinite(gradient)):
            raise NumericOverflowException(f"gradient of {name}")

    state.step += 1
    first_correction = 1 - BETA_1**state.step
    second_correction = 1 - BETA_2**state.step

    updated = {}
    for name, value in params.items():
        gradient = gradients[name]
        first = BETA_1 * state.first_moment[name] + (1 - BETA_1) * gradient
        second = BETA_2 * state.second_moment[name] + (1 - BETA_2) * (
            gradient * gradient
        )
        state.first_moment[name] = first
        state.second_moment[name] = second

        updated[name] = value - lr * (first / first_correction) / (
            np.sqrt(second / second_correction) + EPSILON
        )

    return updated


def lr_schedule(config: TrainConfig, epoch: int) -> float:
    """Compute the learning rate of an epoch, halved periodically.

    Args:
        config (TrainConfig): Run settings
        epoch (int): Epoch, counted from 0

    Raises:
        RejectedInputException: The epoch is negative.

    Returns:
        float: lr·0.5^⌊epoch / lr_halve_every⌋
    """
    if epoch < 0:
        raise RejectedInputException(f"epoch {epoch}")

    return float(config.lr * 0.5 ** (epoch // config.lr_halve_every))
