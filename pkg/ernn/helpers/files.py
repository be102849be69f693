"""Module containing files processing functionality."""

import csv
import pathlib
import typing

import numpy as np

from ernn.helpers.exceptions import (
    CSVParseException,
    FileNotExistsException,
    ImproperPermissionsException,
)
from ernn.helpers.type_hints import CSVRow


def format_number(value: typing.Any) -> str:
    """Format a CSV cell, using the shortest round-trip form for reals.

    Args:
        value (typing.Any): Cell value

    Returns:
        str: Textual cell
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"

    if isinstance(value, (float, np.floating)):
        return repr(float(value))

    if isinstance(value, np.integer):
        return str(int(value))

    if value is None:
        return ""

    return str(value)


def ensure_readable(path: pathlib.Path) -> None:
    """Check that a file exists and can be accessed.

    Args:
        path (pathlib.Path): Path to the file

    Raises:
        FileNotExistsException: File does not exists.
        ImproperPermissionsException: Improper permissions
    """
    try:
        if not path.is_file():
            raise FileNotExistsException(str(path))
    except PermissionError as exception:
        raise ImproperPermissionsException(str(path)) from exception


def read_csv_rows(
    path: pathlib.Path,
) -> typing.List[typing.List[str]]:
    """Read the rows of a comma-separated file, skipping blank lines.

    To be used only with reasonable files. An implementation using yield is
    better for larger files.

    Args:
        path (pathlib.Path): Path to existent file

    Raises:
        CSVParseException: The file is not valid UTF-8 CSV text.
        ImproperPermissionsException: Improper permissions

    Returns:
        typing.List[typing.List[str]]: Rows, as lists of raw cells
    """
    ensure_readable(path)

    try:
        with open(path, "r", encoding="utf-8", newline="") as opened_file:
            return [row for row in csv.reader(opened_file) if row]
    except PermissionError as exception:
        raise ImproperPermissionsException(str(path)) from exception
    except (UnicodeDecodeError, csv.Error) as exception:
        raise CSVParseException(f"{path}: {exception}") from exception


def write_csv_rows(
    path: pathlib.Path,
    header: typing.Optional[typing.Sequence[str]],
    rows: typing.Iterable[CSVRow],
) -> pathlib.Path:
    """Write a comma-separated file with newline-terminated rows.

    Args:
        path (pathlib.Path): Destination
        header (typing.Sequence[str]): Header row, omitted when None
        rows (typing.Iterable[CSVRow]): Data rows

    Raises:
        ImproperPermissionsException: Improper permissions

    Returns:
        pathlib.Path: Written path
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as opened_file:
            writer = csv.writer(opened_file, lineterminator="\n")
            if header is not None:
                writer.writerow(header)
            for row in rows:
                writer.writerow([format_number(cell) for cell in row])
    except PermissionError as exception:
        raise ImproperPermissionsException(str(path)) from exception

    return path
