"""Module implementing the reverse-mode differentiation tape.

A tape is an append-only list of nodes in topological order. Building a model
records its operations once; the recorded program can then be evaluated with
any parameters and inputs, and differentiated in exact reverse order.
"""

import dataclasses
import typing

import numpy as np

from ernn.autodiff.activations import ActivationKinds
from ernn.autodiff.nodes import Node, NodeKinds
from ernn.autodiff.rules import BACKWARD_RULES, FORWARD_RULES
from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NumericOverflowException,
    RejectedInputException,
    TapeStateException,
)
from ernn.helpers.type_hints import Array, ArrayDict


@dataclasses.dataclass
class GradientSet:
    """Gradients produced by one backward pass.

    The parameter gradients are accumulated over every node reading the
    parameter and have the parameter's shape. The node gradients are reported
    only for the nodes explicitly requested.
    """

    parameters: ArrayDict
    nodes: typing.Dict[int, Array]


class Tape:
    """Class modeling a recorded computation graph."""

    nodes: typing.List[Node]
    state_nodes: typing.Dict[int, int]
    __values: typing.List[typing.Optional[Array]]
    __parameter_shapes: typing.Dict[str, typing.Tuple[int, ...]]
    __relu_patterns: typing.Dict[int, Array]
    __kinks: int
    __forwarded: bool

    def __init__(self) -> None:
        """Initialize the object."""
        self.nodes = []
        self.state_nodes = {}
        self.__values = []
        self.__parameter_shapes = {}
        self.__relu_patterns = {}
        self.__kinks = 0
        self.__forwarded = False

    def __len__(self) -> int:
        """Get the number of recorded nodes.

        Returns:
            int: Length
        """
        return len(self.nodes)

    def __append(
        self,
        kind: NodeKinds,
        inputs: typing.Tuple[int, ...] = (),
        **attributes: typing.Any,
    ) -> int:
        if len(inputs) != kind.arity:
            raise RejectedInputException(
                f"{kind.value} takes {kind.arity} inputs, got {len(inputs)}"
            )
        for input_id in inputs:
            if not 0 <= input_id < len(self.nodes):
                raise RejectedInputException(f"unknown input node {input_id}")

        identifier = len(self.nodes)
        self.nodes.append(
            Node(identifier=identifier, kind=kind, inputs=inputs, **attributes)
        )
        self.__values.append(None)
        self.__forwarded = False

        return identifier

    def input(self, slot: int, label: str = "") -> int:
        """Record a value supplied at evaluation time.

        Args:
            slot (int): Position in the evaluation inputs
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(NodeKinds.INPUT, slot=slot, label=label)

    def constant(self, value: typing.Any, label: str = "") -> int:
        """Record a constant.

        Args:
            value (typing.Any): Real scalar or array
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        stored = np.array(value, dtype=np.float64)
        stored.setflags(write=False)

        return self.__append(NodeKinds.CONSTANT, value=stored, label=label)

    def parameter(
        self,
        name: str,
        index: typing.Optional[typing.Tuple[int, ...]] = None,
        label: str = "",
    ) -> int:
        """Record a trainable parameter or one of its elements.

        Args:
            name (str): Parameter name
            index (typing.Tuple[int, ...], optional): Element index
            label (str): Name used in diagnostics. Defaults to the name.

        Returns:
            int: Node identifier
        """
        return self.__append(
            NodeKinds.PARAMETER,
            parameter=name,
            index=index,
            label=label or name,
        )

    def matmul(
        self,
        inputs: int,
        matrix: int,
        transpose: bool = False,
        label: str = "",
    ) -> int:
        """Record a product with a matrix acting on the last axis.

        Args:
            inputs (int): Row vectors, possibly batched
            matrix (int): Matrix A
            transpose (bool): Compute x A instead of x Aᵀ. Defaults to False.
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(
            NodeKinds.MATMUL,
            (inputs, matrix),
            transpose=transpose,
            label=label,
        )

    def add(self, left: int, right: int, label: str = "") -> int:
        """Record a broadcasting sum.

        Args:
            left (int): First term
            right (int): Second term
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(NodeKinds.ADD, (left, right), label=label)

    def sub(self, left: int, right: int, label: str = "") -> int:
        """Record a broadcasting difference.

        Args:
            left (int): Minuend
            right (int): Subtrahend
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(NodeKinds.SUB, (left, right), label=label)

    def scale(self, inputs: int, factor: int, label: str = "") -> int:
        """Record a product with a factor broadcast against the node.

        Args:
            inputs (int): Scaled node
            factor (int): Factor node, usually a scalar
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(NodeKinds.SCALE, (inputs, factor), label=label)

    def scale_by(self, inputs: int, factor: float, label: str = "") -> int:
        """Record a product with a constant scalar.

        Args:
            inputs (int): Scaled node
            factor (float): Constant
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.scale(inputs, self.constant(factor), label=label)

    def activation(
        self, inputs: int, kind: ActivationKinds, label: str = ""
    ) -> int:
        """Record an elementwise nonlinearity.

        Args:
            inputs (int): Pre-activations
            kind (ActivationKinds): Nonlinearity
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(
            NodeKinds.ACTIVATION, (inputs,), activation=kind, label=label
        )

    def readout(
        self, states: int, weights: int, bias: int, label: str = ""
    ) -> int:
        """Record an affine readout h Wᵀ + b.

        Args:
            states (int): Hidden states
            weights (int): Readout matrix
            bias (int): Readout bias
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(
            NodeKinds.READOUT, (states, weights, bias), label=label
        )

    def reduce_sum(self, inputs: int, label: str = "") -> int:
        """Record the sum of all entries.

        Args:
            inputs (int): Summed node
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(NodeKinds.REDUCE_SUM, (inputs,), label=label)

    def cross_entropy(self, logits: int, labels: int, label: str = "") -> int:
        """Record the per-sample softmax cross-entropy.

        Args:
            logits (int): Logits
            labels (int): Class indices, not differentiated
            label (str): Name used in diagnostics. Defaults to "".

        Returns:
            int: Node identifier
        """
        return self.__append(
            NodeKinds.CROSS_ENTROPY, (logits, labels), label=label
        )

    def mark_state(self, step: int, node: int) -> None:
        """Expose a node as the hidden state of a time step.

        Args:
            step (int): Time step, 0 being the initial state
            node (int): Node holding the state
        """
        if not 0 <= node < len(self.nodes):
            raise RejectedInputException(f"unknown state node {node}")

        self.state_nodes[step] = node

    def state_node(self, step: int) -> int:
        """Get the node holding the hidden state of a time step.

        Args:
            step (int): Time step

        Raises:
            RejectedInputException: The step is not exposed.

        Returns:
            int: Node identifier
        """
        if step not in self.state_nodes:
            raise RejectedInputException(f"unknown step {step}")

        return self.state_nodes[step]

    def __leaf_value(
        self,
        node: Node,
        parameters: typing.Mapping[str, Array],
        inputs: typing.Sequence[typing.Any],
    ) -> Array:
        if node.kind == NodeKinds.CONSTANT:
            return typing.cast(Array, node.value)

        if node.kind == NodeKinds.INPUT:
            slot = typing.cast(int, node.slot)
            if not 0 <= slot < len(inputs):
                raise RejectedInputException(
                    f"{node.describe()} reads missing input {slot}"
                )

            return np.asarray(inputs[slot], dtype=np.float64)

        name = typing.cast(str, node.parameter)
        if name not in parameters:
            raise RejectedInputException(
                f"{node.describe()} reads missing parameter {name}"
            )
        parameter = np.asarray(parameters[name], dtype=np.float64)
        self.__parameter_shapes[name] = parameter.shape
        if node.index is None:
            return parameter

        try:
            return np.asarray(parameter[node.index])
        except IndexError as exception:
            raise DimensionMismatchException(
                f"{node.describe()} indexes {name} {parameter.shape}"
            ) from exception

    def forward(
        self,
        parameters: typing.Mapping[str, Array],
        inputs: typing.Sequence[typing.Any] = (),
    ) -> Array:
        """Evaluate every node, retaining the values for a backward pass.

        Args:
            parameters (typing.Mapping[str, Array]): Parameter arrays by name
            inputs (typing.Sequence[typing.Any]): Input values by slot

        Raises:
            TapeStateException: The tape is empty.
            DimensionMismatchException: The operand shapes are inconsistent.
            NumericOverflowException: A node value is not finite.

        Returns:
            Array: Value of the last node
        """
        if not self.nodes:
            raise TapeStateException("empty tape")

        self.__forwarded = False
        self.__parameter_shapes = {}
        self.__relu_patterns = {}
        self.__kinks = 0

        for node in self.nodes:
            if node.kind.is_leaf:
                value = self.__leaf_value(node, parameters, inputs)
            else:
                operands = [
                    typing.cast(Array, self.__values[i]) for i in node.inputs
                ]
                try:
                    value = FORWARD_RULES[node.kind](node, operands)
                except ValueError as exception:
                    raise DimensionMismatchException(
                        node.describe()
                    ) from exception

                if node.activation == ActivationKinds.RELU:
                    self.__relu_patterns[node.identifier] = operands[0] > 0
                    self.__kinks += int(np.count_nonzero(operands[0] == 0))

            if not np.all(np.isfinite(value)):
                raise NumericOverflowException(node.describe())

            self.__values[node.identifier] = value

        self.__forwarded = True

        return typing.cast(Array, self.__values[-1])

    @property
    def forwarded(self) -> bool:
        """Whether the stored values match the recorded nodes."""
        return self.__forwarded

    @property
    def kink_count(self) -> int:
        """Relu pre-activations exactly at 0 in the last evaluation."""
        return self.__kinks

    @property
    def relu_patterns(self) -> typing.Dict[int, Array]:
        """Sign masks of the relu pre-activations in the last evaluation."""
        return self.__relu_patterns

    def value(self, node: int) -> Array:
        """Get the value computed for a node.

        Args:
            node (int): Node identifier

        Raises:
            TapeStateException: The tape was not evaluated.

        Returns:
            Array: Value
        """
        if not self.__forwarded:
            raise TapeStateException("forward was not run")

        return typing.cast(Array, self.__values[node])

    def backward(
        self,
        seed: typing.Any,
        output: typing.Optional[int] = None,
        wrt: typing.Iterable[int] = (),
    ) -> GradientSet:
        """Accumulate adjoints in reverse topological order.

        Args:
            seed (typing.Any): Adjoint of the output, shaped as its value
            output (int, optional): Differentiated node. Defaults to the
                last one.
            wrt (typing.Iterable[int]): Nodes whose gradients are reported

        Raises:
            TapeStateException: The forward pass was not run.
            DimensionMismatchException: The seed shape is wrong.
            NumericOverflowException: A gradient is not finite.

        Returns:
            GradientSet: Parameter and node gradients
        """
        if not self.__forwarded:
            raise TapeStateException("backward before forward")
        if output is None:
            output = len(self.nodes) - 1
        if not 0 <= output < len(self.nodes):
            raise RejectedInputException(f"unknown output node {output}")

        output_value = typing.cast(Array, self.__values[output])
        seed = np.asarray(seed, dtype=np.float64)
        if seed.shape != output_value.shape:
            raise DimensionMismatchException(
                f"seed {seed.shape} for output {output_value.shape}"
            )

        adjoints: typing.List[typing.Optional[Array]] = [None] * (output + 1)
        adjoints[output] = seed

        for node in reversed(self.nodes[: output + 1]):
            adjoint = adjoints[node.identifier]
            if adjoint is None or node.kind.is_leaf:
                continue

            operands = [
                typing.cast(Array, self.__values[i]) for i in node.inputs
            ]
            gradients = BACKWARD_RULES[node.kind](
                node,
                adjoint,
                operands,
                typing.cast(Array, self.__values[node.identifier]),
            )
            for input_id, gradient in zip(node.inputs, gradients):
                if gradient is None:
                    continue
                previous = adjoints[input_id]
                adjoints[input_id] = (
                    gradient if previous is None else previous + gradient
                )

        return GradientSet(
            parameters=self.__collect_parameters(adjoints),
            nodes=self.__collect_nodes(adjoints, wrt),
        )

    def __collect_parameters(
        self, adjoints: typing.List[typing.Optional[Array]]
    ) -> ArrayDict:
        gradients = {
            name: np.zeros(shape)
            for name, shape in self.__parameter_shapes.items()
        }

        for node in self.nodes[: len(adjoints)]:
            adjoint = adjoints[node.identifier]
            if node.kind != NodeKinds.PARAMETER or adjoint is None:
                continue

            name = typing.cast(str, node.parameter)
            if node.index is None:
                gradients[name] += adjoint
            else:
                gradients[name][node.index] += adjoint

        for name, gradient in gradients.items():
            if not np.all(np.isfinite(gradient)):
                raise NumericOverflowException(f"gradient of {name}")

        return gradients

    def __collect_nodes(
        self,
        adjoints: typing.List[typing.Optional[Array]],
        wrt: typing.Iterable[int],
    ) -> typing.Dict[int, Array]:
        gradients = {}
        for node in wrt:
            adjoint = adjoints[node] if node < len(adjoints) else None
            if adjoint is None:
                adjoint = np.zeros_like(
                    typing.cast(Array, self.__values[node])
                )
            gradients[node] = adjoint

        return gradients
