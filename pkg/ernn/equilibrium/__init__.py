"""Package verifying the equilibrium view of the ERNN cell."""

from ernn.equilibrium.analysis import (
    AnalysisSpec,
    UInit,
    WInit,
    analysis_input,
    analysis_params,
)
from ernn.equilibrium.convergence import (
    ConvergenceReport,
    contraction_check,
    iterate_euler,
)
from ernn.equilibrium.oracle import EquilibriumPoint, oracle_equilibrium
from ernn.equilibrium.residual import (
    residual_F,
    residual_jacobian,
    residual_norm,
)
from ernn.equilibrium.stability import (
    bptt_norm_profile,
    fixed_point_map_jacobian,
    implicit_state_jacobian,
    stability_spectrum,
)
