"""Module analysing the local stability of equilibria and of unrolled steps."""

import dataclasses
import typing

import numpy as np

from ernn.autodiff import activations
from ernn.autodiff.gradients import state_jacobians
from ernn.cells.network import SequenceGraph
from ernn.cells.params import CellKinds, CellParams, Model, ReadoutParams
from ernn.cells.steps import check_dimensions
from ernn.equilibrium.oracle import EQUILIBRIUM_TOLERANCE, EquilibriumPoint
from ernn.equilibrium.residual import residual_jacobian
from ernn.helpers.exceptions import RejectedInputException
from ernn.helpers.type_hints import Array
from ernn.numerics.eigen import Spectrum, eig
from ernn.numerics.linalg import lu_solve, spectral_norm

PROFILE_CLASSES = 2


def stability_spectrum(
    params: CellParams, h: Array, h_prev: Array, x: Array
) -> Spectrum:
    """Compute the eigenvalues of the residual Jacobian ∇φ·P·U - γI.

    Args:
        params (CellParams): ERNN cell
        h (Array): Evaluation point
        h_prev (Array): Previous state
        x (Array): Input

    Raises:
        NonConvergenceException: The eigenvalue iteration did not converge.

    Returns:
        Spectrum: Spectrum
    """
    return eig(residual_jacobian(params, h, h_prev, x))


def implicit_state_jacobian(
    params: CellParams, point: EquilibriumPoint, h_prev: Array, x: Array
) -> Array:
    """Differentiate the equilibrium with respect to the previous state.

    The implicit function theorem gives ∂h*/∂h_prev = -(∂F/∂h)⁻¹·∂F/∂h_prev.
    Both factors are the same matrix here, so the result is -I as long as
    the solve succeeds.

    Args:
        params (CellParams): ERNN cell
        point (EquilibriumPoint): Equilibrium for h_prev and x
        h_prev (Array): Previous state
        x (Array): Input

    Raises:
        RejectedInputException: The point is not an equilibrium.
        SingularMatrixException: ∂F/∂h is singular at the equilibrium.

    Returns:
        Array: D×D Jacobian
    """
    if not point.residual_norm <= EQUILIBRIUM_TOLERANCE:
        raise RejectedInputException(
            f"residual {point.residual_norm:.3e} is not an equilibrium"
        )

    jacobian = residual_jacobian(params, point.h_star, h_prev, x)

    return -lu_solve(jacobian, jacobian)


def fixed_point_map_jacobian(
    params: CellParams, h: Array, h_prev: Array, x: Array, eta: float
) -> Array:
    """Differentiate the implicit Euler recursion in its previous state.

    The recursion is h = h_prev + η·φ(U(h + h_prev) + W·x + b). With
    G = ∇φ·U evaluated at the point, the Jacobian of h in h_prev is
    (I - ηG)⁻¹·(I + ηG). No projection is applied.

    Args:
        params (CellParams): ERNN cell
        h (Array): Evaluation point
        h_prev (Array): Previous state
        x (Array): Input
        eta (float): Step size

    Raises:
        SingularMatrixException: I - ηG is singular.

    Returns:
        Array: D×D Jacobian
    """
    check_dimensions(params, h, x)
    check_dimensions(params, h_prev, x)

    transition = params.transition()
    shifted = np.asarray(h, dtype=np.float64) + h_prev
    inner = transition @ shifted + params.W @ x + params.b
    slopes = activations.derivative(params.activation, inner)
    drive = eta * slopes[:, np.newaxis] * transition
    identity = np.eye(params.hidden_dim)

    return lu_solve(identity - drive, identity + drive)


def __truncated(
    params: CellParams, iterations: typing.Optional[int]
) -> CellParams:
    if params.kind != CellKinds.ERNN or iterations is None:
        return params
    if not 1 <= iterations <= params.k_steps:
        raise RejectedInputException(
            f"{iterations} iterations for {params.k_steps} step sizes"
        )

    return dataclasses.replace(
        params, step_sizes=params.step_sizes[..., :iterations]
    )


def bptt_norm_profile(
    params: CellParams,
    inputs: Array,
    iterations: typing.Optional[int] = None,
) -> typing.List[float]:
    """Measure ‖∂h_T/∂h_n‖₂ for every earlier step n of one sequence.

    The cell is unrolled from a zero state over the whole sequence and the
    Jacobians are taken by reverse mode on that single tape.

    Args:
        params (CellParams): Cell of any kind
        inputs (Array): T×d sequence
        iterations (int, optional): Iteration count K of an ERNN cell.
            Defaults to every step size.

    Raises:
        RejectedInputException: The sequence has fewer than two steps.

    Returns:
        typing.List[float]: Norms for n = 1 to T - 1
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim != 2 or inputs.shape[0] < 2:
        raise RejectedInputException(
            f"sequence of shape {inputs.shape}, at least 2 steps needed"
        )
    seq_len = inputs.shape[0]

    cell = __truncated(params, iterations)
    readout = ReadoutParams(
        W_out=np.zeros((PROFILE_CLASSES, cell.hidden_dim)),
        b_out=np.zeros(PROFILE_CLASSES),
    )
    graph = SequenceGraph(cell, seq_len)
    graph.evaluate(Model(cell, readout), inputs[np.newaxis])

    jacobians = state_jacobians(graph.tape, seq_len, range(1, seq_len))

    return [spectral_norm(jacobians[step]) for step in range(1, seq_len)]
