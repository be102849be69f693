"""Module saving and restoring the complete state of a training run.

A checkpoint is a JSON document. Reals are written in their shortest
round-trip form, so saving, loading and saving again yields the same bytes.
"""

import dataclasses
import json
import pathlib
import typing

import numpy as np

from ernn.cells.params import (
    CellKinds,
    CellParams,
    Model,
    ModelSpec,
    ReadoutParams,
)
from ernn.helpers.exceptions import (
    ImproperPermissionsException,
    MalformedFileException,
    NumericOverflowException,
    SchemaVersionException,
    ShapeMismatchException,
)
from ernn.helpers.files import ensure_readable
from ernn.helpers.type_hints import ArrayDict
from ernn.logger import get_logger
from ernn.numerics.rng import RngState
from ernn.train.config import TrainConfig
from ernn.train.metrics import EpochMetrics
from ernn.train.optimizer import AdamState

logger = get_logger()

SCHEMA_VERSION = 1

Shape = typing.Tuple[int, ...]


@dataclasses.dataclass
class Checkpoint:
    """State of a training run after a number of completed epochs."""

    config: TrainConfig
    model: Model
    adam: AdamState
    rng_state: RngState
    epoch: int
    metrics: typing.List[EpochMetrics] = dataclasses.field(
        default_factory=list
    )


def expected_shapes(spec: ModelSpec) -> typing.Dict[str, Shape]:
    """Compute the shape of every trainable array of a model.

    Args:
        spec (ModelSpec): Structure

    Returns:
        typing.Dict[str, Shape]: Shapes by array name
    """
    dim, input_dim = spec.hidden_dim, spec.input_dim
    shapes: typing.Dict[str, Shape] = {
        "W": (dim, input_dim),
        "b": (dim,),
    }

    if spec.kind in (CellKinds.VANILLA, CellKinds.FASTRNN):
        shapes["U"] = (dim, dim)
    elif spec.kind == CellKinds.ANTISYMMETRIC:
        shapes["V"] = (dim, dim)
    else:
        shapes["V"] = (dim, spec.rank)
        shapes["H"] = (spec.rank, dim)

    if spec.kind in (CellKinds.FASTRNN, CellKinds.ANTISYMMETRIC):
        shapes["step_sizes"] = (1,)
    elif spec.kind == CellKinds.ERNN and spec.per_step_eta:
        shapes["step_sizes"] = (spec.seq_len, spec.k_steps)
    elif spec.kind == CellKinds.ERNN:
        shapes["step_sizes"] = (spec.k_steps,)

    shapes["W_out"] = (spec.classes, dim)
    shapes["b_out"] = (spec.classes,)

    return shapes


def __encode_arrays(arrays: ArrayDict) -> typing.Dict[str, typing.Any]:
    return {
        name: {
            "shape": list(value.shape),
            "data": value.reshape(-1).tolist(),
        }
        for name, value in arrays.items()
    }


def _decode_arrays(
    encoded: typing.Mapping[str, typing.Any],
    shapes: typing.Dict[str, Shape],
) -> ArrayDict:
    if set(encoded) != set(shapes):
        raise ShapeMismatchException(
            f"arrays {sorted(encoded)}, expected {sorted(shapes)}"
        )

    arrays = {}
    for name, shape in shapes.items():
        stored_shape = tuple(encoded[name]["shape"])
        data = np.array(encoded[name]["data"], dtype=np.float64)
        if stored_shape != shape or data.size != int(np.prod(shape)):
            raise ShapeMismatchException(
                f"{name} stored as {stored_shape} with {data.size} values,"
                f" expected {shape}"
            )
        arrays[name] = data.reshape(shape)

    return arrays


def checkpoint_to_dict(checkpoint: Checkpoint) -> typing.Dict[str, typing.Any]:
    """Convert a checkpoint to plain values.

    Args:
        checkpoint (Checkpoint): Checkpoint

    Returns:
        typing.Dict[str, typing.Any]: Document
    """
    return {
        "schema_version": SCHEMA_VERSION,
        "config": checkpoint.config.to_dict(),
        "params": __encode_arrays(checkpoint.model.arrays()),
        "adam": {
            "step": checkpoint.adam.step,
            "first_moment": __encode_arrays(checkpoint.adam.first_moment),
            "second_moment": __encode_arrays(checkpoint.adam.second_moment),
        },
        "rng_state": list(checkpoint.rng_state),
        "epoch": checkpoint.epoch,
        "metrics": [metrics.to_dict() for metrics in checkpoint.metrics],
    }


def build_model(spec: ModelSpec, arrays: ArrayDict) -> Model:
    """Assemble a model from its structure and its arrays.

    Args:
        spec (ModelSpec): Structure
        arrays (ArrayDict): Every trainable array

    Returns:
        Model: Model
    """
    cell_arrays = {
        name: value
        for name, value in arrays.items()
        if name not in ("W_out", "b_out")
    }
    cell = CellParams(
        kind=spec.kind,
        activation=spec.activation,
        gamma=spec.gamma,
        projection=spec.projection,
        **cell_arrays,
    )

    return Model(cell, ReadoutParams(arrays["W_out"], arrays["b_out"]))


def checkpoint_from_dict(
    document: typing.Mapping[str, typing.Any]
) -> Checkpoint:
    """Rebuild a checkpoint from plain values.

    Args:
        document (typing.Mapping[str, typing.Any]): Document

    Raises:
        SchemaVersionException: The schema version is not supported.
        ShapeMismatchException: An array does not fit the configuration.
        MalformedFileException: A field is missing or has a wrong type.

    Returns:
        Checkpoint: Checkpoint
    """
    try:
        version = document["schema_version"]
        if version != SCHEMA_VERSION:
            raise SchemaVersionException(
                f"version {version}, expected {SCHEMA_VERSION}"
            )

        config = TrainConfig.from_dict(document["config"])
        shapes = expected_shapes(config.model)
        arrays = _decode_arrays(document["params"], shapes)
        adam = AdamState(
            first_moment=_decode_arrays(
                document["adam"]["first_moment"], shapes
            ),
            second_moment=_decode_arrays(
                document["adam"]["second_moment"], shapes
            ),
            step=int(document["adam"]["step"]),
        )

        return Checkpoint(
            config=config,
            model=build_model(config.model, arrays),
            adam=adam,
            rng_state=typing.cast(
                RngState, tuple(int(word) for word in document["rng_state"])
            ),
            epoch=int(document["epoch"]),
            metrics=[
                EpochMetrics.from_dict(values)
                for values in document["metrics"]
            ],
        )
    except (KeyError, TypeError, ValueError) as exception:
        raise MalformedFileException(
            f"{type(exception).__name__}: {exception}"
        ) from exception


def save_checkpoint(
    checkpoint: Checkpoint, path: pathlib.Path
) -> pathlib.Path:
    """Write a checkpoint.

    Args:
        checkpoint (Checkpoint): Checkpoint
        path (pathlib.Path): Destination

    Raises:
        ImproperPermissionsException: Improper permissions
        NumericOverflowException: A value is not finite.

    Returns:
        pathlib.Path: Written path
    """
    try:
        content = json.dumps(
            checkpoint_to_dict(checkpoint), indent=1, allow_nan=False
        )
    except ValueError as exception:
        raise NumericOverflowException(
            f"checkpoint of epoch {checkpoint.epoch}"
        ) from exception

    try:
        path.write_text(content + "\n", encoding="utf-8")
    except PermissionError as exception:
        raise ImproperPermissionsException(str(path)) from exception

    logger.debug("Checkpoint of epoch %d saved to %s.", checkpoint.epoch, path)

    return path


def load_checkpoint(path: pathlib.Path) -> Checkpoint:
    """Read a checkpoint, validating its version and shapes.

    Args:
        path (pathlib.Path): Checkpoint file

    Raises:
        FileNotExistsException: The file does not exist.
        MalformedFileException: The file is not a complete document.

    Returns:
        Checkpoint: Checkpoint
    """
    ensure_readable(path)

    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exception:
        raise MalformedFileException(
            f"{path}, line {exception.lineno}"
        ) from exception
    except PermissionError as exception:
        raise ImproperPermissionsException(str(path)) from exception

    if not isinstance(document, dict):
        raise MalformedFileException(f"{path} is not a JSON object")

    return checkpoint_from_dict(document)
