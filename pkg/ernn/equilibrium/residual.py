"""Module evaluating the ERNN residual and its Jacobian eagerly.

These functions work on plain arrays and never touch a tape, so they serve
as an independent reference for the unrolled computation.
"""

import typing

import numpy as np

from ernn.autodiff import activations
from ernn.cells.params import CellKinds, CellParams
from ernn.cells.steps import check_dimensions
from ernn.helpers.exceptions import RejectedInputException
from ernn.helpers.type_hints import Array
from ernn.logger import get_logger

logger = get_logger()


def __require_ernn(params: CellParams) -> None:
    if params.kind != CellKinds.ERNN:
        raise RejectedInputException(
            f"residual of a {params.kind.value} cell"
        )


def pre_activation(
    params: CellParams, h: Array, h_prev: Array, x: Array
) -> typing.Tuple[Array, Array]:
    """Compute the shifted state and the argument of the nonlinearity.

    Args:
        params (CellParams): ERNN cell
        h (Array): Iterate
        h_prev (Array): Previous state
        x (Array): Input

    Raises:
        RejectedInputException: The cell is not an ERNN cell.

    Returns:
        typing.Tuple[Array, Array]: h + h_prev and P[U(h + h_prev) + W·x + b]
    """
    __require_ernn(params)
    check_dimensions(params, h, x)
    check_dimensions(params, h_prev, x)

    shifted = np.asarray(h, dtype=np.float64) + h_prev
    transition = params.transition()
    inner = transition @ shifted + params.W @ x + params.b
    if params.projection:
        inner = transition @ inner

    return shifted, inner


def residual_F(  # noqa: N802 # pylint: disable=invalid-name
    params: CellParams, h: Array, h_prev: Array, x: Array
) -> Array:
    """Evaluate F(h) = φ(P[U(h + h_prev) + W·x + b]) - γ(h + h_prev).

    Args:
        params (CellParams): ERNN cell
        h (Array): Iterate
        h_prev (Array): Previous state
        x (Array): Input

    Returns:
        Array: Residual
    """
    shifted, inner = pre_activation(params, h, h_prev, x)

    return activations.apply(params.activation, inner) - params.gamma * shifted


def residual_jacobian(
    params: CellParams, h: Array, h_prev: Array, x: Array
) -> Array:
    """Compute the Jacobian ∇φ·P·U - γI of the residual in h.

    The residual depends on h + h_prev only, so this is also its Jacobian in
    h_prev. Relu pre-activations exactly at 0 use the subgradient 0 and are
    reported as a warning.

    Args:
        params (CellParams): ERNN cell
        h (Array): Iterate
        h_prev (Array): Previous state
        x (Array): Input

    Returns:
        Array: D×D Jacobian
    """
    _, inner = pre_activation(params, h, h_prev, x)

    kinks = int(
        np.count_nonzero(activations.kink_mask(params.activation, inner))
    )
    if kinks:
        logger.warning("%d relu kinks in the residual Jacobian.", kinks)

    slopes = activations.derivative(params.activation, inner)

    return slopes[:, np.newaxis] * params.projected_transition() - (
        params.gamma * np.eye(params.hidden_dim)
    )


def residual_norm(
    params: CellParams, h: Array, h_prev: Array, x: Array
) -> float:
    """Compute the maximum absolute residual entry.

    Args:
        params (CellParams): ERNN cell
        h (Array): Iterate
        h_prev (Array): Previous state
        x (Array): Input

    Returns:
        float: ‖F(h)‖∞
    """
    residual = residual_F(params, h, h_prev, x)

    return float(np.max(np.abs(residual), initial=0.0))
