"""Module defining the results of the commands and their CSV files."""

import dataclasses
import pathlib
import typing

from ernn.helpers.files import write_csv_rows
from ernn.helpers.type_hints import CSVRow

TRAJECTORIES_HEADER = ("step", "model", "h1", "h2")
GRADNORMS_HEADER = ("n", "model", "spectral_norm_dhT_dhn")
CONVERGENCE_HEADER = (
    "i",
    "residual_norm",
    "oracle_distance",
    "ratio",
    "descent_condition",
)
SPECTRUM_HEADER = ("sample", "eig_index", "re", "im")
STABILITY_SUMMARY_HEADER = ("sample", "max_re", "transition_norm")
GRADCHECK_HEADER = (
    "model",
    "max_relative_error",
    "checked",
    "excluded",
    "passed",
)


class ResultTable:
    """Class storing a table produced by a command."""

    title: str
    header: typing.Tuple[str, ...]
    rows: typing.List[CSVRow]

    def __init__(
        self,
        title: str,
        header: typing.Sequence[str],
        rows: typing.Optional[typing.Iterable[CSVRow]] = None,
    ) -> None:
        """Initialize the object.

        Args:
            title (str): Title, also used as file name when written
            header (typing.Sequence[str]): Column names
            rows (typing.Iterable[CSVRow], optional): Initial rows
        """
        self.title = title
        self.header = tuple(header)
        self.rows = list(rows or [])

    def add_row(self, *cells: typing.Any) -> None:
        """Append a row.

        Args:
            cells (typing.Any): Cells, in the order of the header
        """
        self.rows.append(cells)

    def write(self, out_dir: pathlib.Path) -> pathlib.Path:
        """Write the table as <title>.csv.

        Args:
            out_dir (pathlib.Path): Output directory

        Returns:
            pathlib.Path: Written path
        """
        return write_csv_rows(
            out_dir / f"{self.title}.csv", self.header, self.rows
        )


@dataclasses.dataclass
class CommandResult:
    """Files written by a command and the table summarizing it."""

    outputs: typing.List[pathlib.Path] = dataclasses.field(
        default_factory=list
    )
    summary: typing.Optional[ResultTable] = None

    def save(self, table: ResultTable, out_dir: pathlib.Path) -> None:
        """Write a table and record the file.

        Args:
            table (ResultTable): Table
            out_dir (pathlib.Path): Output directory
        """
        self.outputs.append(table.write(out_dir))
