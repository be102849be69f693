"""Module defining the learnable parameters of the cells and the readout."""
# pylint: disable=invalid-name

import dataclasses
import math
import typing
from enum import Enum

import numpy as np

from ernn.autodiff.activations import ActivationKinds
from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NumericOverflowException,
    RejectedInputException,
)
from ernn.helpers.type_hints import Array, ArrayDict
from ernn.numerics.rng import Rng

RECURRENT_INIT_STD = 0.05


class CellKinds(Enum):
    """Enumeration for the recurrent cell types."""

    VANILLA = "vanilla"
    FASTRNN = "fastrnn"
    ANTISYMMETRIC = "antisymmetric"
    ERNN = "ernn"


TRAINABLE_ARRAYS: typing.Dict[CellKinds, typing.Tuple[str, ...]] = {
    CellKinds.VANILLA: ("W", "b", "U"),
    CellKinds.FASTRNN: ("W", "b", "U", "step_sizes"),
    CellKinds.ANTISYMMETRIC: ("W", "b", "V", "step_sizes"),
    CellKinds.ERNN: ("W", "b", "V", "H", "step_sizes"),
}


def _check_finite(name: str, array: Array) -> None:
    if not np.all(np.isfinite(array)):
        raise NumericOverflowException(f"parameter {name}")


def _check_shape(
    name: str, array: typing.Optional[Array], shape: typing.Tuple[int, ...]
) -> None:
    if array is None:
        raise RejectedInputException(f"missing parameter {name}")
    if array.shape != shape:
        raise DimensionMismatchException(
            f"{name} has shape {array.shape}, expected {shape}"
        )


@dataclasses.dataclass
class CellParams:
    """Class storing every learnable symbol of one recurrent cell.

    The ERNN cell stores the low-rank factors V (D×d1) and H (d1×D) of
    U = I + V·H and never a free U. The antisymmetric cell stores the D×D
    matrix V of its transition V - Vᵀ - γI. The step sizes are K reals, or a
    T×K table when every time step has its own.
    """

    kind: CellKinds
    activation: ActivationKinds
    W: Array
    b: Array
    U: typing.Optional[Array] = None
    V: typing.Optional[Array] = None
    H: typing.Optional[Array] = None
    step_sizes: Array = dataclasses.field(
        default_factory=lambda: np.zeros(0)
    )
    gamma: float = 1.0
    projection: bool = True

    def __post_init__(self) -> None:
        """Validate the shapes and values.

        Raises:
            DimensionMismatchException: A parameter has a wrong shape.
            RejectedInputException: A parameter is missing or gamma is
                invalid.
        """
        if self.W.ndim != 2:
            raise DimensionMismatchException(f"W has shape {self.W.shape}")
        dim = self.W.shape[0]
        _check_shape("b", self.b, (dim,))

        if self.kind in (CellKinds.VANILLA, CellKinds.FASTRNN):
            _check_shape("U", self.U, (dim, dim))
        elif self.kind == CellKinds.ANTISYMMETRIC:
            _check_shape("V", self.V, (dim, dim))
        else:
            if self.V is None or self.V.ndim != 2:
                raise RejectedInputException("missing low-rank factor V")
            _check_shape("V", self.V, (dim, self.V.shape[1]))
            _check_shape("H", self.H, (self.V.shape[1], dim))

        if self.kind != CellKinds.VANILLA and (
            self.step_sizes.size == 0 or self.step_sizes.ndim > 2
        ):
            raise RejectedInputException(
                f"step sizes of shape {self.step_sizes.shape}"
            )

        if self.gamma < 0 or (
            self.kind == CellKinds.ERNN and self.gamma == 0
        ):
            raise RejectedInputException(f"gamma {self.gamma}")

        for name, array in self.arrays().items():
            _check_finite(name, array)

    @property
    def hidden_dim(self) -> int:
        """Hidden dimension D."""
        return self.W.shape[0]

    @property
    def input_dim(self) -> int:
        """Input dimension d."""
        return self.W.shape[1]

    @property
    def rank(self) -> int:
        """Rank d1 of the low-rank update, 0 for full-matrix cells."""
        if self.kind != CellKinds.ERNN or self.V is None:
            return 0

        return self.V.shape[1]

    @property
    def k_steps(self) -> int:
        """Number of fixed-point iterations K."""
        return self.step_sizes.shape[-1] if self.step_sizes.size else 0

    @property
    def per_step_eta(self) -> bool:
        """Whether every time step has its own step sizes."""
        return self.step_sizes.ndim == 2

    def arrays(self) -> ArrayDict:
        """Get the trainable arrays by name.

        Returns:
            ArrayDict: Arrays
        """
        return {
            name: typing.cast(Array, getattr(self, name))
            for name in TRAINABLE_ARRAYS[self.kind]
        }

    def with_arrays(self, arrays: typing.Mapping[str, Array]) -> "CellParams":
        """Build a copy with some trainable arrays replaced.

        Args:
            arrays (typing.Mapping[str, Array]): Replacements by name, extra
                names being ignored

        Returns:
            CellParams: Copy
        """
        replacements = {
            name: np.asarray(arrays[name], dtype=np.float64)
            for name in TRAINABLE_ARRAYS[self.kind]
            if name in arrays
        }

        return dataclasses.replace(self, **replacements)

    def transition(self) -> Array:
        """Materialize the effective recurrent matrix.

        Returns:
            Array: U for the full-matrix cells, V - Vᵀ - γI for the
                antisymmetric cell and I + V·H for the ERNN cell
        """
        identity = np.eye(self.hidden_dim)
        if self.kind == CellKinds.ANTISYMMETRIC:
            V = typing.cast(Array, self.V)
            return V - V.T - self.gamma * identity

        if self.kind == CellKinds.ERNN:
            return identity + typing.cast(Array, self.V) @ typing.cast(
                Array, self.H
            )

        return typing.cast(Array, self.U)

    def projected_transition(self) -> Array:
        """Materialize the product P·U applied inside the nonlinearity.

        Returns:
            Array: U·U with projection, U otherwise
        """
        transition = self.transition()
        if self.kind == CellKinds.ERNN and self.projection:
            return transition @ transition

        return transition

    def projector(self) -> Array:
        """Materialize the projection P applied to the input drive.

        Returns:
            Array: U with projection, the identity otherwise
        """
        if self.kind == CellKinds.ERNN and self.projection:
            return self.transition()

        return np.eye(self.hidden_dim)


@dataclasses.dataclass
class ReadoutParams:
    """Class storing the affine classification readout."""

    W_out: Array
    b_out: Array

    def __post_init__(self) -> None:
        """Validate the shapes.

        Raises:
            DimensionMismatchException: The shapes are inconsistent.
            RejectedInputException: There are fewer than two classes.
        """
        if self.W_out.ndim != 2:
            raise DimensionMismatchException(
                f"W_out has shape {self.W_out.shape}"
            )
        if self.W_out.shape[0] < 2:
            raise RejectedInputException(f"{self.W_out.shape[0]} classes")
        _check_shape("b_out", self.b_out, (self.W_out.shape[0],))
        _check_finite("W_out", self.W_out)
        _check_finite("b_out", self.b_out)

    @property
    def classes(self) -> int:
        """Number of classes C."""
        return self.W_out.shape[0]

    def arrays(self) -> ArrayDict:
        """Get the trainable arrays by name.

        Returns:
            ArrayDict: Arrays
        """
        return {"W_out": self.W_out, "b_out": self.b_out}


@dataclasses.dataclass
class Model:
    """Class pairing a recurrent cell with its readout."""

    cell: CellParams
    readout: ReadoutParams

    def __post_init__(self) -> None:
        """Validate that the readout reads the hidden state.

        Raises:
            DimensionMismatchException: The dimensions differ.
        """
        if self.readout.W_out.shape[1] != self.cell.hidden_dim:
            raise DimensionMismatchException(
                f"readout of width {self.readout.W_out.shape[1]} for hidden"
                f" dimension {self.cell.hidden_dim}"
            )

    def arrays(self) -> ArrayDict:
        """Get every trainable array by name.

        Returns:
            ArrayDict: Arrays
        """
        return {**self.cell.arrays(), **self.readout.arrays()}

    def with_arrays(self, arrays: typing.Mapping[str, Array]) -> "Model":
        """Build a copy with some trainable arrays replaced.

        Args:
            arrays (typing.Mapping[str, Array]): Replacements by name

        Returns:
            Model: Copy
        """
        readout = ReadoutParams(
            W_out=np.asarray(arrays.get("W_out", self.readout.W_out)),
            b_out=np.asarray(arrays.get("b_out", self.readout.b_out)),
        )

        return Model(cell=self.cell.with_arrays(arrays), readout=readout)


@dataclasses.dataclass(frozen=True)
class ModelSpec:
    """Structure and initialization settings of a model."""

    kind: CellKinds = CellKinds.ERNN
    activation: ActivationKinds = ActivationKinds.RELU
    hidden_dim: int = 16
    input_dim: int = 4
    classes: int = 2
    rank: int = 4
    k_steps: int = 3
    gamma: float = 1.0
    eta_init: float = 1e-2
    projection: bool = True
    per_step_eta: bool = False
    seq_len: int = 1


def init_cell(spec: ModelSpec, rng: Rng) -> CellParams:
    """Draw the initial parameters of a cell.

    W has N(0, 1/√d) entries and b is 0. The ERNN factors V and H have
    N(0, 0.05²) entries, so U = I + V·H starts close to the identity. The
    full recurrent matrices have N(0, 1/√D) entries. Every step size starts
    at the configured value.

    Args:
        spec (ModelSpec): Structure
        rng (Rng): Generator, drawn in the order W, U or V, H

    Returns:
        CellParams: Parameters
    """
    dim, input_dim = spec.hidden_dim, spec.input_dim
    W = rng.gaussian_matrix(dim, input_dim, 1 / math.sqrt(input_dim))
    b = np.zeros(dim)

    arrays: typing.Dict[str, typing.Optional[Array]] = {
        "U": None,
        "V": None,
        "H": None,
    }
    if spec.kind in (CellKinds.VANILLA, CellKinds.FASTRNN):
        arrays["U"] = rng.gaussian_matrix(dim, dim, 1 / math.sqrt(dim))
    elif spec.kind == CellKinds.ANTISYMMETRIC:
        arrays["V"] = rng.gaussian_matrix(dim, dim, 1 / math.sqrt(dim))
    else:
        arrays["V"] = rng.gaussian_matrix(dim, spec.rank, RECURRENT_INIT_STD)
        arrays["H"] = rng.gaussian_matrix(spec.rank, dim, RECURRENT_INIT_STD)

    if spec.kind == CellKinds.VANILLA:
        step_sizes = np.zeros(0)
    elif spec.kind == CellKinds.ERNN and spec.per_step_eta:
        step_sizes = np.full((spec.seq_len, spec.k_steps), spec.eta_init)
    elif spec.kind == CellKinds.ERNN:
        step_sizes = np.full(spec.k_steps, spec.eta_init)
    else:
        step_sizes = np.full(1, spec.eta_init)

    return CellParams(
        kind=spec.kind,
        activation=spec.activation,
        W=W,
        b=b,
        step_sizes=step_sizes,
        gamma=spec.gamma,
        projection=spec.projection,
        **arrays,
    )


def init_readout(classes: int, hidden_dim: int, rng: Rng) -> ReadoutParams:
    """Draw the initial readout, N(0, 1/√D) weights and a zero bias.

    Args:
        classes (int): Number of classes C
        hidden_dim (int): Hidden dimension D
        rng (Rng): Generator

    Returns:
        ReadoutParams: Readout
    """
    return ReadoutParams(
        W_out=rng.gaussian_matrix(
            classes, hidden_dim, 1 / math.sqrt(hidden_dim)
        ),
        b_out=np.zeros(classes),
    )


def init_model(spec: ModelSpec, rng: Rng) -> Model:
    """Draw the initial parameters of a cell and its readout.

    Args:
        spec (ModelSpec): Structure
        rng (Rng): Generator

    Returns:
        Model: Model
    """
    cell = init_cell(spec, rng)
    readout = init_readout(spec.classes, spec.hidden_dim, rng)

    return Model(cell=cell, readout=readout)
