"""Module computing eigenvalues of dense real matrices.

The matrix is reduced to upper Hessenberg form and the active unreduced block
is iterated with Wilkinson-shifted QR steps. Eigenvalues are deflated from the
bottom of the block, either one at a time or as a trailing 2x2 block solved in
closed form, which yields exact conjugate pairs.
"""

import dataclasses
import math
import typing

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NonConvergenceException,
    RejectedInputException,
)
from ernn.helpers.type_hints import Array

MAX_DIMENSION = 256
DEFLATION_TOLERANCE = 1e-12
SWEEPS_PER_SQUARED_DIMENSION = 100
EXCEPTIONAL_SHIFT_PERIOD = 10


@dataclasses.dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a square matrix with the QR sweeps spent on them."""

    eigenvalues: npt.NDArray[np.complex128]
    iterations_used: int

    @property
    def real_parts(self) -> Array:
        """Real parts of the eigenvalues."""
        return self.eigenvalues.real.copy()

    @property
    def imaginary_parts(self) -> Array:
        """Imaginary parts of the eigenvalues."""
        return self.eigenvalues.imag.copy()

    @property
    def spectral_abscissa(self) -> float:
        """Largest real part."""
        return float(np.max(self.eigenvalues.real))

    @property
    def spectral_radius(self) -> float:
        """Largest modulus."""
        return float(np.max(np.abs(self.eigenvalues)))

    def pairs(self) -> typing.List[typing.Tuple[float, float]]:
        """List the eigenvalues as (real, imaginary) pairs.

        Returns:
            typing.List[typing.Tuple[float, float]]: Pairs
        """
        return [(float(value.real), float(value.imag)) for value in self]

    def __len__(self) -> int:
        """Get the number of eigenvalues.

        Returns:
            int: Length
        """
        return len(self.eigenvalues)

    def __iter__(self) -> typing.Iterator[complex]:
        """Iterate over the eigenvalues.

        Returns:
            typing.Iterator[complex]: Iterator
        """
        return iter(complex(value) for value in self.eigenvalues)


def __is_negligible(h: Array, row: int, scale: float) -> bool:
    local = abs(h[row, row]) + abs(h[row - 1, row - 1])
    if local == 0.0:
        local = scale

    return abs(h[row, row - 1]) <= DEFLATION_TOLERANCE * local


def __active_block_start(h: Array, hi: int, scale: float) -> int:
    lo = hi
    while lo > 0:
        if __is_negligible(h, lo, scale):
            h[lo, lo - 1] = 0.0
            break
        lo -= 1

    return lo


def __block_eigenvalues(
    block: Array,
) -> typing.Tuple[complex, complex]:
    a, b = block[0, 0], block[0, 1]
    c, d = block[1, 0], block[1, 1]

    half_trace = (a + d) / 2
    half_gap = (a - d) / 2
    discriminant = half_gap * half_gap + b * c

    if discriminant >= 0:
        root = math.sqrt(discriminant)
        # Avoid cancellation by computing the larger root first
        larger = half_trace + math.copysign(root, half_trace or 1.0)
        determinant = a * d - b * c
        smaller = determinant / larger if larger != 0.0 else half_trace - root

        return complex(larger), complex(smaller)

    root = math.sqrt(-discriminant)

    return complex(half_trace, root), complex(half_trace, -root)


def __wilkinson_shift(block: Array) -> float:
    first, second = __block_eigenvalues(block)
    corner = block[1, 1]

    if first.imag != 0.0:
        return first.real

    if abs(first.real - corner) <= abs(second.real - corner):
        return first.real

    return second.real


def eig(a: Array) -> Spectrum:
    """Compute all eigenvalues of a square real matrix.

    Args:
        a (Array): Square matrix

    Raises:
        DimensionMismatchException: The matrix is not square.
        RejectedInputException: The matrix is larger than supported.
        NonConvergenceException: The sweep budget was exhausted. The
            eigenvalues deflated so far are attached as partial result.

    Returns:
        Spectrum: Eigenvalues
    """
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchException(f"non-square matrix {a.shape}")
    dim = a.shape[0]
    if dim > MAX_DIMENSION:
        raise RejectedInputException(f"dimension {dim} > {MAX_DIMENSION}")
    if dim == 0:
        return Spectrum(np.zeros(0, dtype=np.complex128), 0)

    h = scipy.linalg.hessenberg(np.array(a, dtype=np.float64))
    scale = float(np.linalg.norm(h, ord=1)) or 1.0
    eigenvalues = np.zeros(dim, dtype=np.complex128)

    budget = SWEEPS_PER_SQUARED_DIMENSION * dim * dim
    sweeps = 0
    sweeps_since_deflation = 0
    hi = dim - 1

    while hi >= 0:
        if hi == 0:
            eigenvalues[0] = h[0, 0]
            break

        lo = __active_block_start(h, hi, scale)

        if lo == hi:
            eigenvalues[hi] = h[hi, hi]
            hi -= 1
            sweeps_since_deflation = 0
            continue

        if lo == hi - 1:
            block = h[hi - 1 : hi + 1, hi - 1 : hi + 1]
            eigenvalues[hi - 1], eigenvalues[hi] = __block_eigenvalues(block)
            hi -= 2
            sweeps_since_deflation = 0
            continue

        if sweeps >= budget:
            raise NonConvergenceException(
                f"{sweeps} QR sweeps",
                partial_result=Spectrum(eigenvalues[hi + 1 :].copy(), sweeps),
            )

        sweeps_since_deflation += 1
        if sweeps_since_deflation % EXCEPTIONAL_SHIFT_PERIOD == 0:
            shift = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            shift = __wilkinson_shift(h[hi - 1 : hi + 1, hi - 1 : hi + 1])

        # Only the unreduced block matters for the remaining eigenvalues
        size = hi - lo + 1
        shifted = h[lo : hi + 1, lo : hi + 1] - shift * np.eye(size)
        q, r = np.linalg.qr(shifted)
        h[lo : hi + 1, lo : hi + 1] = r @ q + shift * np.eye(size)
        sweeps += 1

    return Spectrum(eigenvalues, sweeps)
