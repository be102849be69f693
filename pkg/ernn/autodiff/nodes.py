"""Module defining the nodes recorded on a tape."""

import dataclasses
import typing
from enum import Enum

from ernn.autodiff.activations import ActivationKinds
from ernn.helpers.type_hints import Array


class NodeKinds(Enum):
    """Enumeration for the operations a node can record."""

    INPUT = "input"
    CONSTANT = "constant"
    PARAMETER = "parameter"
    MATMUL = "matmul"
    ADD = "add"
    SUB = "sub"
    SCALE = "scale"
    ACTIVATION = "activation"
    READOUT = "readout"
    REDUCE_SUM = "reduce_sum"
    CROSS_ENTROPY = "cross_entropy"

    @property
    def arity(self) -> int:
        """Number of input nodes the operation consumes."""
        return ARITIES[self]

    @property
    def is_leaf(self) -> bool:
        """Whether the value comes from outside the tape."""
        return ARITIES[self] == 0


ARITIES: typing.Dict[NodeKinds, int] = {
    NodeKinds.INPUT: 0,
    NodeKinds.CONSTANT: 0,
    NodeKinds.PARAMETER: 0,
    NodeKinds.MATMUL: 2,
    NodeKinds.ADD: 2,
    NodeKinds.SUB: 2,
    NodeKinds.SCALE: 2,
    NodeKinds.ACTIVATION: 1,
    NodeKinds.READOUT: 3,
    NodeKinds.REDUCE_SUM: 1,
    NodeKinds.CROSS_ENTROPY: 2,
}


@dataclasses.dataclass(frozen=True, eq=False)
class Node:
    """Class modeling one recorded operation.

    Only the attributes meaningful for the kind are set: the slot for inputs,
    the value for constants, the parameter name and optional element index
    for parameters, the nonlinearity for activations and the transposition
    flag for products.
    """

    identifier: int
    kind: NodeKinds
    inputs: typing.Tuple[int, ...] = ()
    label: str = ""
    slot: typing.Optional[int] = None
    value: typing.Optional[Array] = None
    parameter: typing.Optional[str] = None
    index: typing.Optional[typing.Tuple[int, ...]] = None
    activation: typing.Optional[ActivationKinds] = None
    transpose: bool = False

    def describe(self) -> str:
        """Describe the node for diagnostics.

        Returns:
            str: Identifier, kind and label
        """
        description = f"node {self.identifier} ({self.kind.value})"
        if self.label:
            description += f" {self.label}"

        return description
