"""Module computing reference equilibria with a damped Newton method."""

import dataclasses
import typing

import numpy as np

from ernn.cells.params import CellParams
from ernn.equilibrium.residual import residual_F, residual_jacobian
from ernn.helpers.exceptions import NonConvergenceException
from ernn.helpers.type_hints import Array
from ernn.logger import get_logger
from ernn.numerics.linalg import lu_solve

logger = get_logger()

RESIDUAL_TOLERANCE = 1e-12
EQUILIBRIUM_TOLERANCE = 1e-10
MAX_NEWTON_ITERATIONS = 100
MAX_HALVINGS = 40


@dataclasses.dataclass(frozen=True)
class EquilibriumPoint:
    """Root h* of the residual for one previous state and input."""

    h_star: Array
    residual_norm: float
    newton_iterations: int


def __max_norm(values: Array) -> float:
    if not np.all(np.isfinite(values)):
        return float("inf")

    return float(np.max(np.abs(values), initial=0.0))


def oracle_equilibrium(
    params: CellParams,
    h_prev: Array,
    x: Array,
    start: typing.Optional[Array] = None,
) -> EquilibriumPoint:
    """Solve F(h) = 0 with Newton steps damped by halving.

    Each step s solves ∇F·s = -F and is halved until ‖F‖∞ decreases, at
    most 40 times. The iteration stops once ‖F‖∞ ≤ 1e-12.

    Args:
        params (CellParams): ERNN cell
        h_prev (Array): Previous state
        x (Array): Input
        start (Array, optional): Initial guess. Defaults to 0.

    Raises:
        SingularMatrixException: The residual Jacobian is singular.
        NonConvergenceException: The tolerance was not reached. The best
            iterate is attached as partial result.

    Returns:
        EquilibriumPoint: Equilibrium
    """
    h = (
        np.zeros(params.hidden_dim)
        if start is None
        else np.array(start, dtype=np.float64)
    )
    residual = residual_F(params, h, h_prev, x)
    norm = __max_norm(residual)

    for iteration in range(MAX_NEWTON_ITERATIONS):
        if norm <= RESIDUAL_TOLERANCE:
            return EquilibriumPoint(h, norm, iteration)

        step = lu_solve(residual_jacobian(params, h, h_prev, x), -residual)

        scale = 1.0
        for halvings in range(MAX_HALVINGS + 1):
            candidate = h + scale * step
            candidate_residual = residual_F(params, candidate, h_prev, x)
            candidate_norm = __max_norm(candidate_residual)
            if candidate_norm < norm:
                break
            scale /= 2
        else:
            raise NonConvergenceException(
                f"no decrease after {MAX_HALVINGS} halvings,"
                f" ‖F‖∞ = {norm:.3e}",
                partial_result=EquilibriumPoint(h, norm, iteration),
            )

        logger.debug(
            "Newton iteration %d: ‖F‖∞ = %.3e after %d halvings.",
            iteration + 1,
            candidate_norm,
            halvings,
        )
        h, residual, norm = candidate, candidate_residual, candidate_norm

    if norm <= RESIDUAL_TOLERANCE:
        return EquilibriumPoint(h, norm, MAX_NEWTON_ITERATIONS)

    raise NonConvergenceException(
        f"{MAX_NEWTON_ITERATIONS} Newton iterations, ‖F‖∞ = {norm:.3e}",
        partial_result=EquilibriumPoint(h, norm, MAX_NEWTON_ITERATIONS),
    )
