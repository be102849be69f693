"""Module measuring how the Euler iterations approach the equilibrium."""

import dataclasses
import typing

import numpy as np

from ernn.cells.params import CellParams
from ernn.cells.steps import ernn_iterates
from ernn.equilibrium.oracle import EquilibriumPoint
from ernn.equilibrium.residual import residual_F, residual_jacobian
from ernn.helpers.type_hints import Array
from ernn.numerics.linalg import spectral_norm

# Distances below this fraction of the equilibrium scale are rounding noise
DISTANCE_FLOOR = 1e-12


@dataclasses.dataclass
class ConvergenceReport:
    """Per-iterate record of an Euler fixed-point run.

    Entry i describes h⁽ⁱ⁾, from the start h⁽⁰⁾ to h⁽ᴷ⁾. The contraction
    ratio i compares the distances of h⁽ⁱ⁺¹⁾ and h⁽ⁱ⁾ to the equilibrium and is
    None when undefined: at the last iterate, or when h⁽ⁱ⁾ already sits on
    the equilibrium. The forcing ratio ‖F + η∇F·F‖ / ‖F‖ relates the Euler
    step to an inexact Newton step.
    """

    iterates: typing.List[Array]
    residual_norms: typing.List[float]
    oracle_distances: typing.List[float]
    contraction_ratios: typing.List[typing.Optional[float]]
    descent_condition_holds: typing.List[bool]
    forcing_ratios: typing.List[typing.Optional[float]]
    contraction_bounds: typing.List[float]

    def __len__(self) -> int:
        """Get the number of recorded iterates.

        Returns:
            int: Length
        """
        return len(self.iterates)

    @property
    def tau_bound(self) -> typing.Optional[float]:
        """Largest measured contraction ratio, None if none is defined."""
        ratios = [
            ratio for ratio in self.contraction_ratios if ratio is not None
        ]

        return max(ratios) if ratios else None

    def rows(self) -> typing.List[typing.Tuple[typing.Any, ...]]:
        """Tabulate the report.

        Returns:
            typing.List[typing.Tuple[typing.Any, ...]]: Rows of iteration,
                residual norm, oracle distance, ratio and descent condition
        """
        return [
            (
                i,
                self.residual_norms[i],
                self.oracle_distances[i],
                self.contraction_ratios[i],
                self.descent_condition_holds[i],
            )
            for i in range(len(self))
        ]


def contraction_check(
    params: CellParams, h: Array, h_prev: Array, x: Array, eta: float
) -> float:
    """Compute ‖I + η·∇F‖₂, below 1 where the Euler map contracts.

    Args:
        params (CellParams): ERNN cell
        h (Array): Iterate
        h_prev (Array): Previous state
        x (Array): Input
        eta (float): Step size

    Returns:
        float: Spectral norm
    """
    jacobian = residual_jacobian(params, h, h_prev, x)

    return spectral_norm(np.eye(params.hidden_dim) + eta * jacobian)


def descent_condition(residual: Array, jacobian: Array, eta: float) -> bool:
    """Check η²‖∇F·F‖² + 2η·Fᵀ∇F·F < 0.

    Args:
        residual (Array): F at the iterate
        jacobian (Array): ∇F at the iterate
        eta (float): Step size

    Returns:
        bool: Boolean indicating if the Euler step decreases ‖F‖ to first
            order
    """
    product = jacobian @ residual

    quadratic = eta**2 * float(product @ product)

    return quadratic + 2 * eta * float(residual @ product) < 0


def __step_size(params: CellParams, iteration: int, step: int) -> float:
    row = params.step_sizes
    if params.per_step_eta:
        row = row[step - 1]
    # The last iterate is described with the last step size
    return float(row[min(iteration, len(row) - 1)])


def iterate_euler(
    params: CellParams,
    h_prev: Array,
    x: Array,
    iterations: int,
    oracle: EquilibriumPoint,
    start: typing.Optional[Array] = None,
    stop_tolerance: typing.Optional[float] = None,
    step: int = 1,
) -> ConvergenceReport:
    """Run the ERNN fixed-point iterations and compare them to an oracle.

    The iterates are the ones the cell computes, taken from its tape.

    Args:
        params (CellParams): ERNN cell
        h_prev (Array): Previous state
        x (Array): Input
        iterations (int): Iteration count K
        oracle (EquilibriumPoint): Reference equilibrium
        start (Array, optional): Initial iterate. Defaults to 0.
        stop_tolerance (float, optional): Truncate the report after the
            first iterate whose residual norm is within this tolerance
        step (int): Time step, selecting per-step step sizes. Defaults to 1.

    Raises:
        NumericOverflowException: An iterate is not finite.

    Returns:
        ConvergenceReport: Report
    """
    initial = (
        np.zeros(params.hidden_dim)
        if start is None
        else np.asarray(start, dtype=np.float64)
    )
    iterates = [initial] + ernn_iterates(
        params, h_prev, x, iterations, start=start, step=step
    )

    if stop_tolerance is not None:
        for index, iterate in enumerate(iterates):
            residual = residual_F(params, iterate, h_prev, x)
            if np.linalg.norm(residual) <= stop_tolerance:
                iterates = iterates[: index + 1]
                break

    floor = DISTANCE_FLOOR * (1.0 + float(np.linalg.norm(oracle.h_star)))
    report = ConvergenceReport([], [], [], [], [], [], [])
    for index, iterate in enumerate(iterates):
        residual = residual_F(params, iterate, h_prev, x)
        jacobian = residual_jacobian(params, iterate, h_prev, x)
        eta = __step_size(params, index, step)
        residual_norm = float(np.linalg.norm(residual))
        forced = residual + eta * (jacobian @ residual)

        report.iterates.append(iterate)
        report.residual_norms.append(residual_norm)
        report.oracle_distances.append(
            float(np.linalg.norm(iterate - oracle.h_star))
        )
        report.descent_condition_holds.append(
            descent_condition(residual, jacobian, eta)
        )
        report.forcing_ratios.append(
            float(np.linalg.norm(forced)) / residual_norm
            if residual_norm > 0
            else None
        )
        report.contraction_bounds.append(
            spectral_norm(np.eye(params.hidden_dim) + eta * jacobian)
        )

    distances = report.oracle_distances
    for index in range(len(distances)):
        if index + 1 < len(distances) and distances[index] > floor:
            report.contraction_ratios.append(
                distances[index + 1] / distances[index]
            )
        else:
            report.contraction_ratios.append(None)

    return report
