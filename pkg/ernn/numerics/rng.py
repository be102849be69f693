"""Module implementing the seedable random number generator.

The generator is xoshiro256** seeded through splitmix64. Its whole state is
four unsigned 64-bit integers, so it can be stored in a checkpoint and
restored exactly.
"""

import math
import typing

import numpy as np

from ernn.helpers.exceptions import RejectedInputException
from ernn.helpers.type_hints import Array

MASK_64 = (1 << 64) - 1
UNIFORM_SCALE = 2.0**-53

RngState = typing.Tuple[int, int, int, int]


def _rotate_left(value: int, shift: int) -> int:
    return ((value << shift) | (value >> (64 - shift))) & MASK_64


def _splitmix64(seed: int) -> typing.Iterator[int]:
    state = seed & MASK_64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK_64
        value = state
        value = ((value ^ (value >> 30)) * 0xBF58476D1CE4E5B9) & MASK_64
        value = ((value ^ (value >> 27)) * 0x94D049BB133111EB) & MASK_64
        yield value ^ (value >> 31)


class Rng:
    """Class modeling a xoshiro256** random number generator.

    An instance has a single owner. Sharing it between consumers makes their
    draws depend on the order of the calls.
    """

    seed: int
    __state: typing.List[int]

    def __init__(self, seed: int) -> None:
        """Initialize the object.

        Args:
            seed (int): 64-bit seed, reduced modulo 2^64

        Raises:
            RejectedInputException: The seed is negative.
        """
        if seed < 0:
            raise RejectedInputException(f"negative seed {seed}")

        self.seed = seed & MASK_64
        stream = _splitmix64(self.seed)
        self.__state = [next(stream) for _ in range(4)]

    @property
    def state(self) -> RngState:
        """Current state words."""
        return typing.cast(RngState, tuple(self.__state))

    @state.setter
    def state(self, words: typing.Sequence[int]) -> None:
        if len(words) != 4 or any(
            not 0 <= word <= MASK_64 for word in words
        ):
            raise RejectedInputException(f"invalid state {list(words)}")
        if not any(words):
            raise RejectedInputException("all-zero state")

        self.__state = [int(word) for word in words]

    @classmethod
    def from_state(
        cls: typing.Type["Rng"], seed: int, words: typing.Sequence[int]
    ) -> "Rng":
        """Rebuild a generator from stored state words.

        Args:
            seed (int): Original seed
            words (typing.Sequence[int]): State words

        Returns:
            Rng: Generator continuing the stored stream
        """
        rng = cls(seed)
        rng.state = words

        return rng

    def next_u64(self) -> int:
        """Draw the next unsigned 64-bit integer.

        Returns:
            int: Raw output
        """
        s = self.__state
        result = (_rotate_left((s[1] * 5) & MASK_64, 7) * 9) & MASK_64
        shifted = (s[1] << 17) & MASK_64

        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= shifted
        s[3] = _rotate_left(s[3], 45)

        return result

    def next_float(self) -> float:
        """Draw a uniform real in [0, 1) from the top 53 bits.

        Returns:
            float: Sample
        """
        return (self.next_u64() >> 11) * UNIFORM_SCALE

    def uniform(self, n: int, low: float = 0.0, high: float = 1.0) -> Array:
        """Draw uniform reals in [low, high).

        Args:
            n (int): Sample count
            low (float): Lower bound. Defaults to 0.
            high (float): Upper bound. Defaults to 1.

        Returns:
            Array: Samples
        """
        width = high - low

        return np.array(
            [low + width * self.next_float() for _ in range(n)],
            dtype=np.float64,
        )

    def below(self, bound: int) -> int:
        """Draw an integer uniformly from [0, bound) by rejection.

        Args:
            bound (int): Exclusive upper bound

        Raises:
            RejectedInputException: The bound is not positive.

        Returns:
            int: Sample
        """
        if bound <= 0:
            raise RejectedInputException(f"non-positive bound {bound}")

        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def permutation(self, n: int) -> typing.List[int]:
        """Draw a uniform permutation of range(n) by Fisher-Yates.

        Args:
            n (int): Length

        Returns:
            typing.List[int]: Permuted indices
        """
        indices = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            indices[i], indices[j] = indices[j], indices[i]

        return indices

    def gaussian(self, n: int, std: float = 1.0) -> Array:
        """Draw centered normal samples with the Box-Muller transform.

        Samples are produced in pairs; for odd counts the spare is dropped.

        Args:
            n (int): Sample count
            std (float): Standard deviation. Defaults to 1.

        Raises:
            RejectedInputException: The standard deviation is negative.

        Returns:
            Array: Samples
        """
        if std < 0 or not math.isfinite(std):
            raise RejectedInputException(f"standard deviation {std}")

        samples = np.empty(n + (n % 2), dtype=np.float64)
        for i in range(0, n, 2):
            # 1 - u lies in (0, 1], so the logarithm is finite
            radius = math.sqrt(-2.0 * math.log(1.0 - self.next_float()))
            angle = 2.0 * math.pi * self.next_float()
            samples[i] = radius * math.cos(angle)
            samples[i + 1] = radius * math.sin(angle)

        return std * samples[:n]

    def gaussian_matrix(self, rows: int, cols: int, std: float = 1.0) -> Array:
        """Draw a matrix of centered normal samples in row-major order.

        Args:
            rows (int): Row count
            cols (int): Column count
            std (float): Standard deviation. Defaults to 1.

        Returns:
            Array: Samples
        """
        return self.gaussian(rows * cols, std).reshape(rows, cols)


def gaussian(rng: Rng, n: int, std: float) -> Array:
    """Draw n centered normal samples.

    Args:
        rng (Rng): Generator
        n (int): Sample count
        std (float): Standard deviation

    Returns:
        Array: Samples
    """
    return rng.gaussian(n, std)
