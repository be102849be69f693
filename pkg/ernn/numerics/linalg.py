"""Module implementing the dense linear algebra primitives."""

import warnings

import numpy as np
import scipy.linalg

from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NumericOverflowException,
    RejectedInputException,
    SingularMatrixException,
)
from ernn.helpers.type_hints import Array

PIVOT_TOLERANCE = 1e-13


def as_matrix(data: object) -> Array:
    """Convert data to a finite two-dimensional array of 64-bit reals.

    Args:
        data (object): Nested sequences or array

    Raises:
        RejectedInputException: The data is not two-dimensional.
        NumericOverflowException: The data has non-finite entries.

    Returns:
        Array: Matrix
    """
    matrix = np.array(data, dtype=np.float64)
    if matrix.ndim != 2:
        raise RejectedInputException(f"expected a matrix, got {matrix.ndim}-D")
    if not np.all(np.isfinite(matrix)):
        raise NumericOverflowException("matrix with non-finite entries")

    return matrix


def as_vector(data: object) -> Array:
    """Convert data to a finite one-dimensional array of 64-bit reals.

    Args:
        data (object): Sequence or array

    Raises:
        RejectedInputException: The data is not one-dimensional.
        NumericOverflowException: The data has non-finite entries.

    Returns:
        Array: Vector
    """
    vector = np.array(data, dtype=np.float64)
    if vector.ndim != 1:
        raise RejectedInputException(f"expected a vector, got {vector.ndim}-D")
    if not np.all(np.isfinite(vector)):
        raise NumericOverflowException("vector with non-finite entries")

    return vector


def matmul(a: Array, b: Array) -> Array:
    """Multiply two matrices.

    Args:
        a (Array): Left factor
        b (Array): Right factor

    Raises:
        DimensionMismatchException: The inner dimensions differ.

    Returns:
        Array: Product
    """
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatchException(f"{a.shape} x {b.shape}")

    return a @ b


def lu_solve(a: Array, rhs: Array) -> Array:
    """Solve a square linear system with partial pivoting.

    Args:
        a (Array): Square system matrix
        rhs (Array): Right-hand side, a vector or a matrix of columns

    Raises:
        DimensionMismatchException: The shapes are not compatible.
        SingularMatrixException: A pivot is below the tolerance.

    Returns:
        Array: Solution, shaped as the right-hand side
    """
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchException(f"non-square matrix {a.shape}")
    if rhs.shape[0] != a.shape[0]:
        raise DimensionMismatchException(
            f"system {a.shape} with right-hand side {rhs.shape}"
        )

    with warnings.catch_warnings():
        # Exact zero pivots are reported below as an exception
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, pivots = scipy.linalg.lu_factor(a, check_finite=True)
    smallest_pivot = np.min(np.abs(np.diag(lu))) if a.shape[0] else 1.0
    if smallest_pivot < PIVOT_TOLERANCE:
        raise SingularMatrixException(f"pivot magnitude {smallest_pivot:.3e}")

    return scipy.linalg.lu_solve((lu, pivots), rhs)


def spectral_norm(a: Array) -> float:
    """Compute the largest singular value.

    Args:
        a (Array): Matrix

    Returns:
        float: Spectral norm, 0 for the zero matrix
    """
    if a.size == 0 or not np.any(a):
        return 0.0

    return float(np.linalg.norm(a, ord=2))


def identity(dim: int) -> Array:
    """Build an identity matrix.

    Args:
        dim (int): Dimension

    Returns:
        Array: Identity
    """
    return np.eye(dim, dtype=np.float64)
