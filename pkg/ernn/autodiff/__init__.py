"""Package implementing tape-based reverse-mode differentiation."""

from ernn.autodiff.activations import ActivationKinds
from ernn.autodiff.gradients import (
    GradcheckReport,
    gradcheck,
    relative_error,
    state_jacobian,
    state_jacobians,
)
from ernn.autodiff.nodes import Node, NodeKinds
from ernn.autodiff.tape import GradientSet, Tape
