"""Module for printing the command line interface."""

from humanfriendly import format_timespan
from rich.console import Console
from rich.table import Table

from ernn.cli.messages import MessageFactory, MessageTypes
from ernn.helpers.exceptions import ERNNException
from ernn.helpers.files import format_number
from ernn.main import CommandResult, ResultTable


class Printer:
    """Class for printing the user interface."""

    SUCCESS_MESSAGE = "The {command} command finished in {duration}."
    OUTPUT_MESSAGE = "Wrote {path}"
    PARTIAL_OUTPUT_MESSAGE = "Kept the partial output {path}"

    console: Console

    def __init__(self, console: Console) -> None:
        """Initialize the object.

        Args:
            console (Console): Console to print in
        """
        self.console = console

    @staticmethod
    def __represent_table(result_table: ResultTable) -> Table:
        table = Table(title=result_table.title, show_lines=False)
        for index, column in enumerate(result_table.header):
            table.add_column(
                column,
                justify="left" if index == 0 else "right",
                style="bold" if index == 0 else None,
            )
        for row in result_table.rows:
            table.add_row(*(format_number(cell) for cell in row))

        return table

    def __print_message(self, message_type: MessageTypes, text: str) -> None:
        message = MessageFactory().create_message(message_type, text)

        self.console.print(message.to_text())

    def print_exception(self, exception: ERNNException) -> None:
        """Print an exception to stdout.

        Args:
            exception (ERNNException): Exception to print
        """
        self.__print_message(MessageTypes.ERROR, str(exception))

    def print_summary(self, result: CommandResult) -> None:
        """Print the table summarizing a command, if it has one.

        Args:
            result (CommandResult): Result of the command
        """
        if result.summary is not None:
            self.console.print(self.__represent_table(result.summary))

    def print_outputs(
        self, command: str, result: CommandResult, seconds: float
    ) -> None:
        """Print the written files and the duration of a command.

        Args:
            command (str): Command name
            result (CommandResult): Result of the command
            seconds (float): Duration
        """
        for path in result.outputs:
            self.__print_message(
                MessageTypes.OUTPUT, self.OUTPUT_MESSAGE.format(path=path)
            )

        self.__print_message(
            MessageTypes.SUCCESS,
            self.SUCCESS_MESSAGE.format(
                command=command, duration=format_timespan(seconds)
            ),
        )

    def print_partial_outputs(self, result: CommandResult) -> None:
        """Print the files a failed command wrote before failing.

        Args:
            result (CommandResult): Result of the command
        """
        for path in result.outputs:
            self.__print_message(
                MessageTypes.WARNING,
                self.PARTIAL_OUTPUT_MESSAGE.format(path=path),
            )
