"""Module unrolling a cell over whole sequences on a single tape."""

import typing

import numpy as np

from ernn.autodiff.tape import GradientSet, Tape
from ernn.cells.params import CellParams, Model
from ernn.cells.steps import check_dimensions, emit_cell_parameters, emit_step
from ernn.helpers.exceptions import DimensionMismatchException
from ernn.helpers.type_hints import Array, ArrayDict


class SequenceGraph:
    """Class modeling a cell unrolled over T steps, with readout and loss.

    The graph is recorded once per structure and evaluated for any parameters
    and batch. The input slots are the initial state, the T inputs, the labels
    and the batch weight 1/B, so the final short batch of an epoch reuses the
    same tape. The loss is the mean cross-entropy of the readout on h_T.
    """

    tape: Tape
    cell: CellParams
    seq_len: int
    states: typing.List[int]
    logits: int
    losses: int
    loss: int

    def __init__(self, cell: CellParams, seq_len: int) -> None:
        """Initialize the object.

        Args:
            cell (CellParams): Cell whose structure is unrolled
            seq_len (int): Number of time steps T
        """
        self.cell = cell
        self.seq_len = seq_len
        self.tape = Tape()

        tape = self.tape
        state = tape.input(0, "h0")
        tape.mark_state(0, state)

        nodes = emit_cell_parameters(tape, cell)
        self.states = [state]
        for step in range(1, seq_len + 1):
            inputs = tape.input(step, f"x{step}")
            state = emit_step(tape, cell, nodes, state, inputs, step)
            tape.mark_state(step, state)
            self.states.append(state)

        self.logits = tape.readout(
            state,
            tape.parameter("W_out"),
            tape.parameter("b_out"),
            label="logits",
        )
        labels = tape.input(seq_len + 1, "labels")
        self.losses = tape.cross_entropy(self.logits, labels)
        self.loss = tape.scale(
            tape.reduce_sum(self.losses),
            tape.input(seq_len + 2, "1/B"),
            label="loss",
        )

    def inputs(
        self,
        sequences: Array,
        labels: typing.Optional[Array] = None,
        initial_state: typing.Optional[Array] = None,
    ) -> typing.List[typing.Any]:
        """Arrange a batch into the input slots of the tape.

        Args:
            sequences (Array): Batch of shape B×T×d
            labels (Array, optional): B labels. Defaults to zeros, for
                evaluations that ignore the loss.
            initial_state (Array, optional): B×D initial states. Defaults to
                zeros.

        Raises:
            DimensionMismatchException: The batch does not fit the graph.

        Returns:
            typing.List[typing.Any]: Input values by slot
        """
        sequences = np.asarray(sequences, dtype=np.float64)
        if sequences.ndim != 3 or sequences.shape[1] != self.seq_len:
            raise DimensionMismatchException(
                f"batch {sequences.shape} for {self.seq_len} steps"
            )
        batch = sequences.shape[0]
        if initial_state is None:
            initial_state = np.zeros((batch, self.cell.hidden_dim))
        check_dimensions(self.cell, initial_state, sequences[:, 0, :])
        if labels is None:
            labels = np.zeros(batch)
        if np.shape(labels) != (batch,):
            raise DimensionMismatchException(
                f"{np.shape(labels)} labels for {batch} sequences"
            )

        return [
            initial_state,
            *(sequences[:, step, :] for step in range(self.seq_len)),
            labels,
            1.0 / batch,
        ]

    def evaluate(
        self,
        model: Model,
        sequences: Array,
        labels: typing.Optional[Array] = None,
    ) -> float:
        """Evaluate the graph on a batch.

        Args:
            model (Model): Parameters
            sequences (Array): Batch of shape B×T×d
            labels (Array, optional): B labels

        Returns:
            float: Mean cross-entropy
        """
        self.tape.forward(model.arrays(), self.inputs(sequences, labels))

        return float(self.tape.value(self.loss))

    def loss_and_gradients(
        self, model: Model, sequences: Array, labels: Array
    ) -> typing.Tuple[float, ArrayDict]:
        """Compute the mean cross-entropy and its parameter gradients.

        Args:
            model (Model): Parameters
            sequences (Array): Batch of shape B×T×d
            labels (Array): B labels

        Returns:
            typing.Tuple[float, ArrayDict]: Loss and gradients by name
        """
        loss = self.evaluate(model, sequences, labels)
        gradients: GradientSet = self.tape.backward(1.0, output=self.loss)

        return loss, gradients.parameters

    def predict_logits(self, model: Model, sequences: Array) -> Array:
        """Compute the logits of a batch.

        Args:
            model (Model): Parameters
            sequences (Array): Batch of shape B×T×d

        Returns:
            Array: B×C logits
        """
        self.evaluate(model, sequences)

        return self.tape.value(self.logits)

    def hidden_states(self, model: Model, sequences: Array) -> Array:
        """Compute the hidden states h_1 to h_T of a batch.

        Args:
            model (Model): Parameters
            sequences (Array): Batch of shape B×T×d

        Returns:
            Array: B×T×D states
        """
        self.evaluate(model, sequences)

        return np.stack(
            [self.tape.value(node) for node in self.states[1:]], axis=1
        )
