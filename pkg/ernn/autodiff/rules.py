"""Module storing the forward and backward rule of every tape node kind.

The rules live in two dictionaries keyed by node kind. A forward rule maps
the node and the values of its inputs to the node value. A backward rule maps
the node, the adjoint of its value, the values of its inputs and its own value
to one adjoint per input, None meaning that no gradient flows there.
"""

import typing

import numpy as np
import scipy.special

from ernn.autodiff import activations
from ernn.autodiff.nodes import Node, NodeKinds
from ernn.helpers.exceptions import (
    DimensionMismatchException,
    RejectedInputException,
)
from ernn.helpers.type_hints import Array

ForwardRule = typing.Callable[[Node, typing.List[Array]], Array]
BackwardRule = typing.Callable[
    [Node, Array, typing.List[Array], Array],
    typing.List[typing.Optional[Array]],
]


def unbroadcast(gradient: Array, shape: typing.Tuple[int, ...]) -> Array:
    """Sum a gradient over the axes added or stretched by broadcasting.

    Args:
        gradient (Array): Gradient shaped as the broadcast result
        shape (typing.Tuple[int, ...]): Shape of the broadcast operand

    Returns:
        Array: Gradient shaped as the operand
    """
    while gradient.ndim > len(shape):
        gradient = gradient.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and gradient.shape[axis] != 1:
            gradient = gradient.sum(axis=axis, keepdims=True)

    return gradient


def __as_rows(values: Array) -> Array:
    return values.reshape(-1, values.shape[-1])


def checked_labels(labels: Array, classes: int) -> Array:
    """Convert class labels to integers, validating their range.

    Args:
        labels (Array): Labels, possibly stored as reals
        classes (int): Number of classes

    Raises:
        RejectedInputException: A label is not an integer in [0, classes).

    Returns:
        Array: Integer labels
    """
    labels = np.asarray(labels)
    as_integers = np.rint(labels).astype(np.int64)
    if (
        np.any(as_integers != labels)
        or np.any(as_integers < 0)
        or np.any(as_integers >= classes)
    ):
        raise RejectedInputException(
            f"labels outside [0, {classes}): {np.unique(labels).tolist()}"
        )

    return as_integers


def softmax_cross_entropy(
    logits: Array, labels: Array
) -> typing.Tuple[Array, Array]:
    """Compute the cross-entropy of softmax probabilities.

    Args:
        logits (Array): Logits, the last axis indexing the classes
        labels (Array): Labels, shaped as the logits without the last axis

    Returns:
        typing.Tuple[Array, Array]: Per-sample losses and probabilities
    """
    if np.shape(labels) != logits.shape[:-1]:
        raise DimensionMismatchException(
            f"logits {logits.shape} with labels {np.shape(labels)}"
        )
    classes = logits.shape[-1]
    indices = checked_labels(labels, classes)

    # log_softmax subtracts the maximum logit before exponentiating
    log_probabilities = scipy.special.log_softmax(logits, axis=-1)
    losses = -np.take_along_axis(
        log_probabilities, indices[..., np.newaxis], axis=-1
    )[..., 0]

    return losses, np.exp(log_probabilities)


def __matmul_forward(node: Node, values: typing.List[Array]) -> Array:
    inputs, matrix = values
    if matrix.ndim != 2:
        raise DimensionMismatchException(f"{node.label}: non-matrix operand")
    if node.transpose:
        return inputs @ matrix

    return inputs @ matrix.T


def __matmul_backward(
    node: Node, adjoint: Array, values: typing.List[Array], _: Array
) -> typing.List[typing.Optional[Array]]:
    inputs, matrix = values
    if node.transpose:
        return [
            adjoint @ matrix.T,
            __as_rows(inputs).T @ __as_rows(adjoint),
        ]

    return [adjoint @ matrix, __as_rows(adjoint).T @ __as_rows(inputs)]


def __add_backward(
    _: Node, adjoint: Array, values: typing.List[Array], __: Array
) -> typing.List[typing.Optional[Array]]:
    return [
        unbroadcast(adjoint, values[0].shape),
        unbroadcast(adjoint, values[1].shape),
    ]


def __sub_backward(
    _: Node, adjoint: Array, values: typing.List[Array], __: Array
) -> typing.List[typing.Optional[Array]]:
    return [
        unbroadcast(adjoint, values[0].shape),
        unbroadcast(-adjoint, values[1].shape),
    ]


def __scale_backward(
    _: Node, adjoint: Array, values: typing.List[Array], __: Array
) -> typing.List[typing.Optional[Array]]:
    inputs, factor = values

    return [
        unbroadcast(factor * adjoint, inputs.shape),
        np.asarray(unbroadcast(adjoint * inputs, factor.shape)),
    ]


def __activation_forward(node: Node, values: typing.List[Array]) -> Array:
    return activations.apply(
        typing.cast(activations.ActivationKinds, node.activation), values[0]
    )


def __activation_backward(
    node: Node, adjoint: Array, values: typing.List[Array], output: Array
) -> typing.List[typing.Optional[Array]]:
    kind = typing.cast(activations.ActivationKinds, node.activation)

    return [adjoint * activations.derivative(kind, values[0], output)]


def __readout_forward(node: Node, values: typing.List[Array]) -> Array:
    states, weights, bias = values
    if weights.ndim != 2 or bias.ndim != 1:
        raise DimensionMismatchException(f"{node.label}: readout operands")

    return states @ weights.T + bias


def __readout_backward(
    _: Node, adjoint: Array, values: typing.List[Array], __: Array
) -> typing.List[typing.Optional[Array]]:
    states, weights, bias = values

    return [
        adjoint @ weights,
        __as_rows(adjoint).T @ __as_rows(states),
        unbroadcast(adjoint, bias.shape),
    ]


def __reduce_sum_backward(
    _: Node, adjoint: Array, values: typing.List[Array], __: Array
) -> typing.List[typing.Optional[Array]]:
    return [np.full_like(values[0], float(adjoint))]


def __cross_entropy_forward(_: Node, values: typing.List[Array]) -> Array:
    losses, _ = softmax_cross_entropy(values[0], values[1])

    return losses


def __cross_entropy_backward(
    _: Node, adjoint: Array, values: typing.List[Array], __: Array
) -> typing.List[typing.Optional[Array]]:
    logits, labels = values
    _, probabilities = softmax_cross_entropy(logits, labels)
    indices = checked_labels(labels, logits.shape[-1])
    one_hot = np.zeros_like(probabilities)
    np.put_along_axis(one_hot, indices[..., np.newaxis], 1.0, axis=-1)

    # Labels are data, not a differentiable input
    return [adjoint[..., np.newaxis] * (probabilities - one_hot), None]


FORWARD_RULES: typing.Dict[NodeKinds, ForwardRule] = {
    NodeKinds.MATMUL: __matmul_forward,
    NodeKinds.ADD: lambda _, values: values[0] + values[1],
    NodeKinds.SUB: lambda _, values: values[0] - values[1],
    NodeKinds.SCALE: lambda _, values: values[1] * values[0],
    NodeKinds.ACTIVATION: __activation_forward,
    NodeKinds.READOUT: __readout_forward,
    NodeKinds.REDUCE_SUM: lambda _, values: np.asarray(np.sum(values[0])),
    NodeKinds.CROSS_ENTROPY: __cross_entropy_forward,
}

BACKWARD_RULES: typing.Dict[NodeKinds, BackwardRule] = {
    NodeKinds.MATMUL: __matmul_backward,
    NodeKinds.ADD: __add_backward,
    NodeKinds.SUB: __sub_backward,
    NodeKinds.SCALE: __scale_backward,
    NodeKinds.ACTIVATION: __activation_backward,
    NodeKinds.READOUT: __readout_backward,
    NodeKinds.REDUCE_SUM: __reduce_sum_backward,
    NodeKinds.CROSS_ENTROPY: __cross_entropy_backward,
}
