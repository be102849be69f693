"""Module building cells with a prescribed recurrent matrix for analyses."""
# pylint: disable=invalid-name

import dataclasses
import math
import typing
from enum import Enum

import numpy as np

from ernn.autodiff.activations import ActivationKinds
from ernn.cells.params import CellKinds, CellParams
from ernn.helpers.exceptions import RejectedInputException
from ernn.helpers.type_hints import Array
from ernn.numerics.linalg import spectral_norm
from ernn.numerics.rng import Rng


class UInit(Enum):
    """Enumeration for the shapes of the target recurrent matrix."""

    RANDOM = "random"
    IDENTITY = "identity"


class WInit(Enum):
    """Enumeration for the input weight initializations."""

    RANDOM = "random"
    ONES = "ones"


@dataclasses.dataclass(frozen=True)
class AnalysisSpec:
    """Settings of a cell built for analysis.

    The recurrent matrix U is either a Gaussian matrix rescaled to the
    spectral norm u_norm or u_norm·I. An ERNN cell realizes it exactly with
    full-rank factors V = U - I and H = I. A fixed input value replaces the
    random input.
    """

    kind: CellKinds = CellKinds.ERNN
    activation: ActivationKinds = ActivationKinds.TANH
    hidden_dim: int = 8
    input_dim: int = 4
    gamma: float = 1.0
    eta: float = 1.0
    iterations: int = 10
    u_norm: float = 0.5
    u_init: UInit = UInit.RANDOM
    w_init: WInit = WInit.RANDOM
    bias: float = 0.0
    input_value: typing.Optional[float] = None
    projection: bool = True

    def __post_init__(self) -> None:
        """Validate the settings.

        Raises:
            RejectedInputException: A setting is out of range.
        """
        if self.hidden_dim < 1 or self.input_dim < 1 or self.iterations < 1:
            raise RejectedInputException(
                f"D = {self.hidden_dim}, d = {self.input_dim},"
                f" K = {self.iterations}"
            )
        if self.u_norm < 0:
            raise RejectedInputException(f"target norm {self.u_norm}")


def target_transition(spec: AnalysisSpec, rng: Rng) -> Array:
    """Draw the recurrent matrix U of an analysis cell.

    Args:
        spec (AnalysisSpec): Settings
        rng (Rng): Generator

    Returns:
        Array: D×D matrix with spectral norm u_norm
    """
    dim = spec.hidden_dim
    if spec.u_init == UInit.IDENTITY:
        return spec.u_norm * np.eye(dim)

    matrix = rng.gaussian_matrix(dim, dim)
    norm = spectral_norm(matrix)

    return spec.u_norm * matrix / norm if norm else matrix


def analysis_params(spec: AnalysisSpec, rng: Rng) -> CellParams:
    """Build a cell of any kind around a target recurrent matrix.

    Args:
        spec (AnalysisSpec): Settings
        rng (Rng): Generator, drawn in the order U, W

    Returns:
        CellParams: Cell
    """
    target = target_transition(spec, rng)
    if spec.w_init == WInit.ONES:
        W = np.ones((spec.hidden_dim, spec.input_dim))
    else:
        W = rng.gaussian_matrix(
            spec.hidden_dim, spec.input_dim, 1 / math.sqrt(spec.input_dim)
        )

    arrays: typing.Dict[str, typing.Optional[Array]] = {
        "U": None,
        "V": None,
        "H": None,
    }
    if spec.kind == CellKinds.ERNN:
        arrays["V"] = target - np.eye(spec.hidden_dim)
        arrays["H"] = np.eye(spec.hidden_dim)
        step_sizes = np.full(spec.iterations, spec.eta)
    elif spec.kind == CellKinds.ANTISYMMETRIC:
        arrays["V"] = target
        step_sizes = np.full(1, spec.eta)
    else:
        arrays["U"] = target
        step_sizes = (
            np.full(1, spec.eta)
            if spec.kind == CellKinds.FASTRNN
            else np.zeros(0)
        )

    return CellParams(
        kind=spec.kind,
        activation=spec.activation,
        W=W,
        b=np.full(spec.hidden_dim, spec.bias),
        step_sizes=step_sizes,
        gamma=spec.gamma,
        projection=spec.projection,
        **arrays,
    )


def analysis_input(spec: AnalysisSpec, rng: Rng) -> Array:
    """Draw an input vector, or repeat the fixed input value.

    Args:
        spec (AnalysisSpec): Settings
        rng (Rng): Generator

    Returns:
        Array: Input of dimension d
    """
    if spec.input_value is not None:
        return np.full(spec.input_dim, spec.input_value)

    return rng.gaussian(spec.input_dim)
