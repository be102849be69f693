"""pytest package configuration."""
import typing

import numpy as np
import pytest

from ernn.cells import ActivationKinds, CellKinds, CellParams
from ernn.equilibrium import AnalysisSpec, analysis_input, analysis_params
from ernn.helpers.type_hints import Array
from ernn.numerics.rng import Rng

Problem = typing.Tuple[CellParams, Array, Array]


def __scalar_linear_cell(projection: bool) -> CellParams:
    # U = 1 - 0.5
    return CellParams(
        kind=CellKinds.ERNN,
        activation=ActivationKinds.IDENTITY,
        W=np.ones((1, 1)),
        b=np.zeros(1),
        V=np.array([[-0.5]]),
        H=np.ones((1, 1)),
        step_sizes=np.full(60, 0.1),
        projection=projection,
    )


@pytest.fixture(name="scalar_problem")
def fixture_scalar_problem() -> Problem:
    """Build the scalar affine residual 1 - h/2, whose root is 2.

    Returns:
        Problem: Cell, previous state and input
    """
    return __scalar_linear_cell(False), np.zeros(1), np.ones(1)


@pytest.fixture(name="projected_scalar_problem")
def fixture_projected_scalar_problem() -> Problem:
    """Build the scalar affine residual with the projection P = U.

    Returns:
        Problem: Cell, previous state and input
    """
    return __scalar_linear_cell(True), np.zeros(1), np.ones(1)


@pytest.fixture(name="tanh_problem")
def fixture_tanh_problem() -> Problem:
    """Build a tanh ERNN with ‖U‖₂ = 0.5 and a random step.

    Returns:
        Problem: Cell, previous state and input
    """
    spec = AnalysisSpec(eta=0.5, iterations=10)
    rng = Rng(31)
    cell = analysis_params(spec, rng)

    return cell, rng.gaussian(spec.hidden_dim), analysis_input(spec, rng)
