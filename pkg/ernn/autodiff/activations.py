"""Module defining the elementwise nonlinearities and their derivatives."""

import typing
from enum import Enum

import numpy as np
import scipy.special

from ernn.helpers.type_hints import Array


class ActivationKinds(Enum):
    """Enumeration for the supported elementwise nonlinearities."""

    TANH = "tanh"
    SIGMOID = "sigmoid"
    RELU = "relu"
    IDENTITY = "identity"


def __relu_derivative(inputs: Array, _: Array) -> Array:
    # Subgradient at the kink is 0
    return (inputs > 0).astype(np.float64)


__FUNCTIONS: typing.Dict[ActivationKinds, typing.Callable[[Array], Array]] = {
    ActivationKinds.TANH: np.tanh,
    ActivationKinds.SIGMOID: scipy.special.expit,
    ActivationKinds.RELU: lambda inputs: np.maximum(inputs, 0.0),
    ActivationKinds.IDENTITY: lambda inputs: inputs.copy(),
}

__DERIVATIVES: typing.Dict[
    ActivationKinds, typing.Callable[[Array, Array], Array]
] = {
    ActivationKinds.TANH: lambda _, outputs: 1.0 - outputs * outputs,
    ActivationKinds.SIGMOID: lambda _, outputs: outputs * (1.0 - outputs),
    ActivationKinds.RELU: __relu_derivative,
    ActivationKinds.IDENTITY: lambda inputs, _: np.ones_like(inputs),
}


def apply(kind: ActivationKinds, inputs: Array) -> Array:
    """Apply a nonlinearity elementwise.

    Args:
        kind (ActivationKinds): Nonlinearity
        inputs (Array): Pre-activations

    Returns:
        Array: Activations
    """
    return __FUNCTIONS[kind](np.asarray(inputs, dtype=np.float64))


def derivative(
    kind: ActivationKinds,
    inputs: Array,
    outputs: typing.Optional[Array] = None,
) -> Array:
    """Compute the elementwise derivative of a nonlinearity.

    Args:
        kind (ActivationKinds): Nonlinearity
        inputs (Array): Pre-activations
        outputs (Array, optional): Activations, recomputed when missing

    Returns:
        Array: Derivatives, with the relu derivative at 0 being 0
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    if outputs is None:
        outputs = apply(kind, inputs)

    return __DERIVATIVES[kind](inputs, outputs)


def kink_mask(kind: ActivationKinds, inputs: Array) -> Array:
    """Find the pre-activations where the nonlinearity is not differentiable.

    Args:
        kind (ActivationKinds): Nonlinearity
        inputs (Array): Pre-activations

    Returns:
        Array: Boolean mask, set only for relu inputs equal to 0
    """
    if kind != ActivationKinds.RELU:
        return np.zeros(np.shape(inputs), dtype=bool)

    return np.asarray(inputs) == 0.0
