"""Package with the recurrent cells and the classification readout."""

from ernn.autodiff.activations import ActivationKinds
from ernn.cells.network import SequenceGraph
from ernn.cells.params import (
    CellKinds,
    CellParams,
    Model,
    ModelSpec,
    ReadoutParams,
    init_cell,
    init_model,
    init_readout,
)
from ernn.cells.steps import (
    antisymmetric_step,
    ernn_iterates,
    ernn_step,
    fastrnn_step,
    readout_logits,
    vanilla_step,
)
