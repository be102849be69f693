"""Module recording the cell updates on a tape.

Training, analysis and the single-step functions all go through the same
emitters, so every code path evaluates exactly the same operations. States and
inputs are row vectors, optionally batched along a leading axis.
"""

import dataclasses
import typing

import numpy as np

from ernn.autodiff.tape import Tape
from ernn.cells.params import CellKinds, CellParams, ReadoutParams
from ernn.helpers.exceptions import (
    DimensionMismatchException,
    RejectedInputException,
)
from ernn.helpers.type_hints import Array


@dataclasses.dataclass(frozen=True)
class CellNodes:
    """Parameter nodes of a cell recorded once on a tape."""

    W: int  # pylint: disable=invalid-name
    b: int
    U: typing.Optional[int] = None  # pylint: disable=invalid-name
    V: typing.Optional[int] = None  # pylint: disable=invalid-name
    H: typing.Optional[int] = None  # pylint: disable=invalid-name


def emit_cell_parameters(tape: Tape, params: CellParams) -> CellNodes:
    """Record the matrix and bias parameters read by a cell.

    Step sizes are recorded where they are used, as each use reads one
    element.

    Args:
        tape (Tape): Tape
        params (CellParams): Cell, only its structure being used

    Returns:
        CellNodes: Parameter nodes
    """
    names = {"U": None, "V": None, "H": None}
    if params.kind in (CellKinds.VANILLA, CellKinds.FASTRNN):
        names["U"] = tape.parameter("U")
    elif params.kind == CellKinds.ANTISYMMETRIC:
        names["V"] = tape.parameter("V")
    else:
        names["V"] = tape.parameter("V")
        names["H"] = tape.parameter("H")

    return CellNodes(W=tape.parameter("W"), b=tape.parameter("b"), **names)


def __step_size(
    tape: Tape, params: CellParams, step: int, iteration: int
) -> int:
    if params.per_step_eta:
        return tape.parameter("step_sizes", (step - 1, iteration))

    return tape.parameter("step_sizes", (iteration,))


def emit_input_drive(tape: Tape, nodes: CellNodes, inputs: int) -> int:
    """Record the input contribution x Wᵀ + b.

    Args:
        tape (Tape): Tape
        nodes (CellNodes): Parameter nodes
        inputs (int): Input node

    Returns:
        int: Node identifier
    """
    return tape.add(tape.matmul(inputs, nodes.W), nodes.b)


def emit_low_rank_transition(tape: Tape, nodes: CellNodes, state: int) -> int:
    """Record the product with U = I + V·H without materializing U.

    Args:
        tape (Tape): Tape
        nodes (CellNodes): Parameter nodes of an ERNN cell
        state (int): Multiplied node

    Returns:
        int: Node identifier
    """
    projected = tape.matmul(state, typing.cast(int, nodes.H))

    return tape.add(state, tape.matmul(projected, typing.cast(int, nodes.V)))


def emit_vanilla(
    tape: Tape,
    params: CellParams,
    nodes: CellNodes,
    state: int,
    inputs: int,
    step: int = 1,
) -> int:
    """Record φ(U·h_prev + W·x + b).

    Args:
        tape (Tape): Tape
        params (CellParams): Cell structure
        nodes (CellNodes): Parameter nodes
        state (int): Previous state node
        inputs (int): Input node
        step (int): Time step, used in diagnostics. Defaults to 1.

    Returns:
        int: New state node
    """
    recurrent = tape.matmul(state, typing.cast(int, nodes.U))
    drive = tape.add(recurrent, emit_input_drive(tape, nodes, inputs))

    return tape.activation(drive, params.activation, label=f"step {step}")


def emit_fastrnn(
    tape: Tape,
    params: CellParams,
    nodes: CellNodes,
    state: int,
    inputs: int,
    step: int = 1,
) -> int:
    """Record h_prev + η·φ(U·h_prev + W·x + b).

    Args:
        tape (Tape): Tape
        params (CellParams): Cell structure
        nodes (CellNodes): Parameter nodes
        state (int): Previous state node
        inputs (int): Input node
        step (int): Time step, used in diagnostics. Defaults to 1.

    Returns:
        int: New state node
    """
    recurrent = tape.matmul(state, typing.cast(int, nodes.U))
    drive = tape.add(recurrent, emit_input_drive(tape, nodes, inputs))
    update = tape.scale(
        tape.activation(drive, params.activation),
        tape.parameter("step_sizes", (0,)),
    )

    return tape.add(state, update, label=f"step {step}")


def emit_antisymmetric(
    tape: Tape,
    params: CellParams,
    nodes: CellNodes,
    state: int,
    inputs: int,
    step: int = 1,
) -> int:
    """Record h_prev + η·φ((V - Vᵀ - γI)·h_prev + W·x + b).

    Args:
        tape (Tape): Tape
        params (CellParams): Cell structure
        nodes (CellNodes): Parameter nodes
        state (int): Previous state node
        inputs (int): Input node
        step (int): Time step, used in diagnostics. Defaults to 1.

    Returns:
        int: New state node
    """
    V = typing.cast(int, nodes.V)  # pylint: disable=invalid-name
    skew = tape.sub(
        tape.matmul(state, V), tape.matmul(state, V, transpose=True)
    )
    damped = tape.sub(skew, tape.scale_by(state, params.gamma))
    drive = tape.add(damped, emit_input_drive(tape, nodes, inputs))
    update = tape.scale(
        tape.activation(drive, params.activation),
        tape.parameter("step_sizes", (0,)),
    )

    return tape.add(state, update, label=f"step {step}")


def emit_ernn_iterations(
    tape: Tape,
    params: CellParams,
    nodes: CellNodes,
    state: int,
    inputs: int,
    step: int = 1,
    iterations: typing.Optional[int] = None,
    start: typing.Optional[int] = None,
) -> typing.List[int]:
    """Record the Euler fixed-point iterations of one ERNN step.

    Each iteration computes h⁽ⁱ⁺¹⁾ = h⁽ⁱ⁾ + η⁽ⁱ⁺¹⁾·F(h⁽ⁱ⁾) with the residual
    F(h) = φ(P[U(h + h_prev) + W·x + b]) - γ(h + h_prev), where P = U when
    the cell projects and P = I otherwise.

    Args:
        tape (Tape): Tape
        params (CellParams): Cell structure
        nodes (CellNodes): Parameter nodes
        state (int): Previous state node h_prev
        inputs (int): Input node
        step (int): Time step, selecting per-step step sizes. Defaults to 1.
        iterations (int, optional): Iteration count K. Defaults to the
            number of step sizes.
        start (int, optional): Initial iterate node. Defaults to h⁽⁰⁾ = 0.

    Raises:
        RejectedInputException: The iteration count is invalid.

    Returns:
        typing.List[int]: Iterate nodes h⁽¹⁾ to h⁽ᴷ⁾
    """
    if iterations is None:
        iterations = params.k_steps
    if not 1 <= iterations <= params.k_steps:
        raise RejectedInputException(
            f"K = {iterations} with {params.k_steps} step sizes"
        )

    drive = emit_input_drive(tape, nodes, inputs)
    iterate = start
    iterates = []
    for iteration in range(iterations):
        label = f"step {step} iteration {iteration + 1}"

        # The zero initial iterate is folded away
        shifted = state if iterate is None else tape.add(iterate, state)
        inner = tape.add(emit_low_rank_transition(tape, nodes, shifted), drive)
        if params.projection:
            inner = emit_low_rank_transition(tape, nodes, inner)
        residual = tape.sub(
            tape.activation(inner, params.activation),
            tape.scale_by(shifted, params.gamma),
        )

        step_size = __step_size(tape, params, step, iteration)
        if iterate is None:
            iterate = tape.scale(residual, step_size, label=label)
        else:
            update = tape.scale(residual, step_size)
            iterate = tape.add(iterate, update, label=label)
        iterates.append(iterate)

    return iterates


EMITTERS: typing.Dict[CellKinds, typing.Callable[..., int]] = {
    CellKinds.VANILLA: emit_vanilla,
    CellKinds.FASTRNN: emit_fastrnn,
    CellKinds.ANTISYMMETRIC: emit_antisymmetric,
}


def emit_step(
    tape: Tape,
    params: CellParams,
    nodes: CellNodes,
    state: int,
    inputs: int,
    step: int = 1,
) -> int:
    """Record one time step of any cell.

    Args:
        tape (Tape): Tape
        params (CellParams): Cell structure
        nodes (CellNodes): Parameter nodes
        state (int): Previous state node
        inputs (int): Input node
        step (int): Time step. Defaults to 1.

    Returns:
        int: New state node
    """
    if params.kind == CellKinds.ERNN:
        return emit_ernn_iterations(tape, params, nodes, state, inputs, step)[
            -1
        ]

    return EMITTERS[params.kind](tape, params, nodes, state, inputs, step)


def check_dimensions(params: CellParams, state: Array, inputs: Array) -> None:
    """Check that a state and an input fit a cell.

    Args:
        params (CellParams): Cell
        state (Array): Hidden state
        inputs (Array): Input

    Raises:
        DimensionMismatchException: A dimension differs.
    """
    if np.shape(state)[-1:] != (params.hidden_dim,):
        raise DimensionMismatchException(
            f"state {np.shape(state)} for hidden dimension {params.hidden_dim}"
        )
    if np.shape(inputs)[-1:] != (params.input_dim,):
        raise DimensionMismatchException(
            f"input {np.shape(inputs)} for input dimension {params.input_dim}"
        )


def __run_single_step(
    params: CellParams, kind: CellKinds, state: Array, inputs: Array
) -> Array:
    if params.kind != kind:
        raise RejectedInputException(
            f"{kind.value} step on a {params.kind.value} cell"
        )
    check_dimensions(params, state, inputs)

    tape = Tape()
    state_node = tape.input(0, "h_prev")
    input_node = tape.input(1, "x")
    nodes = emit_cell_parameters(tape, params)
    EMITTERS[kind](tape, params, nodes, state_node, input_node)

    return tape.forward(params.arrays(), [state, inputs])


def vanilla_step(params: CellParams, state: Array, inputs: Array) -> Array:
    """Compute a vanilla RNN step.

    Args:
        params (CellParams): Vanilla cell
        state (Array): Previous state
        inputs (Array): Input

    Returns:
        Array: New state
    """
    return __run_single_step(params, CellKinds.VANILLA, state, inputs)


def fastrnn_step(params: CellParams, state: Array, inputs: Array) -> Array:
    """Compute a FastRNN residual step.

    Args:
        params (CellParams): FastRNN cell
        state (Array): Previous state
        inputs (Array): Input

    Returns:
        Array: New state
    """
    return __run_single_step(params, CellKinds.FASTRNN, state, inputs)


def antisymmetric_step(
    params: CellParams, state: Array, inputs: Array
) -> Array:
    """Compute an antisymmetric RNN step.

    Args:
        params (CellParams): Antisymmetric cell
        state (Array): Previous state
        inputs (Array): Input

    Returns:
        Array: New state
    """
    return __run_single_step(
        params, CellKinds.ANTISYMMETRIC, state, inputs
    )


def ernn_iterates(
    params: CellParams,
    state: Array,
    inputs: Array,
    iterations: typing.Optional[int] = None,
    start: typing.Optional[Array] = None,
    step: int = 1,
) -> typing.List[Array]:
    """Compute every iterate of one ERNN step.

    Args:
        params (CellParams): ERNN cell
        state (Array): Previous state h_prev
        inputs (Array): Input
        iterations (int, optional): Iteration count K. Defaults to the
            number of step sizes.
        start (Array, optional): Initial iterate. Defaults to 0.
        step (int): Time step, selecting per-step step sizes. Defaults to 1.

    Raises:
        RejectedInputException: The cell is not an ERNN cell.

    Returns:
        typing.List[Array]: Iterates h⁽¹⁾ to h⁽ᴷ⁾
    """
    if params.kind != CellKinds.ERNN:
        raise RejectedInputException(
            f"ERNN iterations on a {params.kind.value} cell"
        )
    check_dimensions(params, state, inputs)

    tape = Tape()
    state_node = tape.input(0, "h_prev")
    input_node = tape.input(1, "x")
    start_node = tape.input(2, "h0") if start is not None else None
    nodes = emit_cell_parameters(tape, params)
    iterates = emit_ernn_iterations(
        tape,
        params,
        nodes,
        state_node,
        input_node,
        step=step,
        iterations=iterations,
        start=start_node,
    )

    tape.forward(params.arrays(), [state, inputs, start])

    return [tape.value(node) for node in iterates]


def ernn_step(
    params: CellParams,
    state: Array,
    inputs: Array,
    iterations: typing.Optional[int] = None,
) -> Array:
    """Compute an ERNN step, the K-th Euler fixed-point iterate from 0.

    Args:
        params (CellParams): ERNN cell
        state (Array): Previous state h_prev
        inputs (Array): Input
        iterations (int, optional): Iteration count K. Defaults to the
            number of step sizes.

    Returns:
        Array: New state h⁽ᴷ⁾
    """
    return ernn_iterates(params, state, inputs, iterations)[-1]


def readout_logits(readout: ReadoutParams, state: Array) -> Array:
    """Compute the class logits W_out·h_T + b_out.

    Args:
        readout (ReadoutParams): Readout
        state (Array): Final hidden state

    Raises:
        DimensionMismatchException: The state does not fit the readout.

    Returns:
        Array: Logits
    """
    if np.shape(state)[-1:] != (readout.W_out.shape[1],):
        raise DimensionMismatchException(
            f"state {np.shape(state)} for readout {readout.W_out.shape}"
        )

    tape = Tape()
    state_node = tape.input(0, "h_T")
    tape.readout(
        state_node, tape.parameter("W_out"), tape.parameter("b_out")
    )

    return tape.forward(readout.arrays(), [state])
