"""Module reading and writing flattened sequence datasets as CSV."""

import math
import pathlib
import typing

import numpy as np

from ernn.helpers.exceptions import CSVParseException
from ernn.helpers.files import read_csv_rows, write_csv_rows
from ernn.tasks.dataset import SequenceDataset


def __parse_label(cell: str, row: int, column: int) -> int:
    try:
        label = int(cell)
    except ValueError as exception:
        raise CSVParseException(
            f"row {row}, column {column}: label {cell!r}"
        ) from exception

    if label < 0:
        raise CSVParseException(f"row {row}, column {column}: label {label}")

    return label


def __parse_features(
    cells: typing.Sequence[str], row: int
) -> typing.List[float]:
    features = []
    for column, cell in enumerate(cells, start=1):
        try:
            value = float(cell)
        except ValueError as exception:
            raise CSVParseException(
                f"row {row}, column {column}: value {cell!r}"
            ) from exception

        if not math.isfinite(value):
            raise CSVParseException(
                f"row {row}, column {column}: value {cell!r}"
            )
        features.append(value)

    return features


def load_csv_sequences(
    path: pathlib.Path,
    seq_len: int,
    input_dim: int,
    header: bool = False,
) -> SequenceDataset:
    """Load sequences stored one per row, features then label.

    Each row holds T·d features in time-major order followed by an integer
    label. Rows and columns are numbered from 1 in the error details, the
    header included.

    Args:
        path (pathlib.Path): CSV file
        seq_len (int): Sequence length T
        input_dim (int): Feature dimension d
        header (bool): Whether the first row is a header. Defaults to False.

    Raises:
        CSVParseException: The file is empty or not UTF-8 text, a row is
            ragged or a cell is not a finite number.
        FileNotExistsException: The file does not exist.

    Returns:
        SequenceDataset: Dataset, with C inferred from the largest label
    """
    rows = read_csv_rows(path)
    first_row = 2 if header else 1
    if header:
        rows = rows[1:]
    if not rows:
        raise CSVParseException(f"{path} has no data rows")

    width = seq_len * input_dim
    sequences = np.empty((len(rows), seq_len, input_dim))
    labels = np.empty(len(rows), dtype=np.int64)
    for index, cells in enumerate(rows):
        row = first_row + index
        if len(cells) != width + 1:
            raise CSVParseException(
                f"row {row} has {len(cells)} columns, expected {width + 1}"
            )

        features = __parse_features(cells[:width], row)
        sequences[index] = np.reshape(features, (seq_len, input_dim))
        labels[index] = __parse_label(cells[width], row, width + 1)

    return SequenceDataset(
        sequences, labels, classes=max(2, int(labels.max()) + 1)
    )


def save_csv_sequences(
    path: pathlib.Path, data: SequenceDataset, header: bool = False
) -> pathlib.Path:
    """Write sequences one per row, in the format read by the loader.

    Args:
        path (pathlib.Path): Destination
        data (SequenceDataset): Dataset
        header (bool): Whether to write a header row. Defaults to False.

    Returns:
        pathlib.Path: Written path
    """
    names = None
    if header:
        names = [
            f"t{step}_f{feature}"
            for step in range(1, data.seq_len + 1)
            for feature in range(1, data.input_dim + 1)
        ] + ["label"]

    rows = (
        [*sequence.reshape(-1).tolist(), int(label)]
        for sequence, label in zip(data.sequences, data.labels)
    )

    return write_csv_rows(path, names, rows)
