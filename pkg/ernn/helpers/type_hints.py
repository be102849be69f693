"""Module for defining reusable custom type hints."""

import typing

import numpy as np
import numpy.typing as npt

# Dense matrix or vector of 64-bit reals
Array = npt.NDArray[np.float64]

# Named collection of trainable arrays
ArrayDict = typing.Dict[str, Array]

# Row of a CSV output
CSVRow = typing.Sequence[typing.Union[int, float, str, bool]]

# Flat configuration mapping
FlatConfig = typing.Dict[str, typing.Any]
