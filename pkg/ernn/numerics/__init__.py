"""Package with the dense linear algebra and random sampling primitives."""

from ernn.numerics.eigen import Spectrum, eig
from ernn.numerics.linalg import (
    as_matrix,
    as_vector,
    identity,
    lu_solve,
    matmul,
    spectral_norm,
)
from ernn.numerics.rng import Rng, RngState, gaussian
