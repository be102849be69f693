"""Module for testing Adam and the learning rate schedule."""

import numpy as np
import pytest

from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NumericOverflowException,
    RejectedInputException,
)
from ernn.train import AdamState, TrainConfig, adam_step, lr_schedule


def test_first_step() -> None:
    """Test that the first update moves every coordinate by about lr."""
    params = {"w": np.array([1.0, -2.0, 0.5]), "b": np.zeros(1)}
    gradients = {"w": np.array([3.0, -0.25, 1e-3]), "b": np.array([-4.0])}
    state = AdamState.zeros(params)

    updated = adam_step(state, params, gradients, 0.1)

    for name, gradient in gradients.items():
        expected = params[name] - 0.1 * gradient / (np.abs(gradient) + 1e-8)
        assert np.allclose(
            updated[name], expected, rtol=0, atol=1e-9
        ), f"The first update of {name} is not -lr·sign(g)."
    assert state.step == 1, "The step counter was not advanced."
    assert params["w"][0] == 1.0, "The parameters were changed in place."


def test_zero_gradient() -> None:
    """Test that a zero gradient keeps the parameters."""
    params = {"w": np.array([0.3, -0.7])}
    state = AdamState.zeros(params)

    updated = adam_step(state, params, {"w": np.zeros(2)}, 0.1)

    assert np.array_equal(updated["w"], params["w"]), "The parameters moved."
    assert state.step == 1, "The step counter was not advanced."


def test_bias_correction() -> None:
    """Test that a constant gradient keeps a step of about lr."""
    params = {"w": np.array([0.0])}
    state = AdamState.zeros(params)

    for _ in range(50):
        params = adam_step(state, params, {"w": np.array([2.0])}, 0.01)

    assert params["w"][0] == pytest.approx(
        -0.5, rel=1e-6
    ), "The corrected steps do not add up to 50·lr."


def test_non_finite_gradient() -> None:
    """Test that a non-finite gradient leaves everything untouched."""
    params = {"w": np.ones(2)}
    state = AdamState.zeros(params)
    adam_step(state, params, {"w": np.ones(2)}, 0.1)
    moments = state.first_moment["w"].copy()

    with pytest.raises(NumericOverflowException) as execution:
        adam_step(state, params, {"w": np.array([1.0, np.nan])}, 0.1)
    assert execution.value, "A NaN gradient was applied."

    assert state.step == 1, "The step counter was advanced."
    assert np.array_equal(
        state.first_moment["w"], moments
    ), "The moments were changed."


def test_mismatched_gradient() -> None:
    """Test the rejection of gradients of the wrong shape."""
    params = {"w": np.ones(2)}

    for gradients in ({"w": np.ones(3)}, {}):
        with pytest.raises(DimensionMismatchException) as execution:
            adam_step(AdamState.zeros(params), params, gradients, 0.1)
        assert execution.value, f"The gradients {gradients} were accepted."


def test_lr_schedule() -> None:
    """Test the halving of the learning rate."""
    config = TrainConfig(lr=1e-2, lr_halve_every=10)

    assert lr_schedule(config, 0) == 1e-2, "The first rate is not lr."
    assert lr_schedule(config, 9) == 1e-2, "The rate was halved early."
    assert lr_schedule(config, 25) == pytest.approx(
        2.5e-3
    ), "The rate was not halved twice."

    with pytest.raises(RejectedInputException) as execution:
        lr_schedule(config, -1)
    assert execution.value, "A negative epoch was accepted."


def test_invalid_settings() -> None:
    """Test the rejection of out of range settings."""
    for changes in (
        {"lr": 0.0},
        {"lr": -1.0},
        {"batch_size": 0},
        {"epochs": -1},
        {"lr_halve_every": 0},
        {"seed": -3},
    ):
        with pytest.raises(RejectedInputException) as execution:
            TrainConfig(**changes)  # type: ignore[arg-type]
        assert execution.value, f"The settings {changes} were accepted."
