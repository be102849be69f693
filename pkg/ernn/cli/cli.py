#!/usr/bin/env python3

"""Module for implementing the CLI."""

import pathlib
import sys
import time
import typing

import click
from rich.console import Console
from rich.traceback import install

from ernn import VERSION
from ernn.cli.printer import Printer
from ernn.helpers.exceptions import (
    CheckFailedException,
    ConfigException,
    ERNNException,
    FileNotExistsException,
    NumericException,
    ParserException,
    RejectedInputException,
)
from ernn.main import Main
from ernn.main.results import CommandResult

EXIT_SUCCESS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_FAILURE = 3
MAX_SEED = 2**64 - 1

COMMANDS_HELP = {
    "train": (
        "Train a model on the configured task and write metrics.csv and"
        " checkpoint.json."
    ),
    "phase-space": (
        "Write the two-dimensional state trajectories of the vanilla, FastRNN"
        " and ERNN cells driven by a random walk to trajectories.csv."
    ),
    "grad-flow": (
        "Write the norms of the hidden state Jacobians of ERNN and vanilla"
        " cells along one sequence to gradnorms.csv."
    ),
    "fixed-point": (
        "Compare the Euler iterates of one ERNN step with its Newton"
        " equilibrium and write convergence.csv."
    ),
    "stability": (
        "Write the residual Jacobian eigenvalues at sampled ERNN steps to"
        " spectrum.csv."
    ),
    "gradcheck": (
        "Compare the loss gradients of every cell kind with central finite"
        " differences."
    ),
}

console = Console()


def exit_code(exception: ERNNException) -> int:
    """Map an exception to the exit code of the process.

    Args:
        exception (ERNNException): Exception stopping the command

    Returns:
        int: Exit code
    """
    if isinstance(exception, CheckFailedException):
        return EXIT_CHECK_FAILED
    if isinstance(
        exception,
        (
            ConfigException,
            RejectedInputException,
            ParserException,
            FileNotExistsException,
        ),
    ):
        return EXIT_CONFIG_ERROR
    if isinstance(exception, NumericException):
        return EXIT_NUMERIC_FAILURE

    return EXIT_CHECK_FAILED


def __run(
    command: str,
    config: typing.Optional[pathlib.Path],
    out_dir: pathlib.Path,
    seed: typing.Optional[int],
    verbose: bool,
) -> None:
    printer = Printer(console)
    result = CommandResult()
    config_path = str(config) if config else None

    started = time.monotonic()
    try:
        Main(verbose).run(command, config_path, out_dir, seed, result)
    except ERNNException as exception:
        printer.print_summary(result)
        printer.print_exception(exception)
        printer.print_partial_outputs(result)

        sys.exit(exit_code(exception))

    printer.print_summary(result)
    printer.print_outputs(command, result, time.monotonic() - started)


@click.group()
@click.version_option(VERSION, prog_name="ernn")
def cli() -> None:
    """Train and analyze equilibriated recurrent neural networks."""


def __add_command(name: str, help_text: str) -> None:
    @cli.command(name, help=help_text)
    @click.option(
        "-c",
        "--config",
        type=click.Path(exists=True, dir_okay=False, path_type=pathlib.Path),
        help=(
            "Configuration file, a flat mapping of key paths to values. If"
            " omitted, every key takes its default value."
        ),
    )
    @click.option(
        "-o",
        "--out-dir",
        type=click.Path(file_okay=False, path_type=pathlib.Path),
        default=pathlib.Path("results"),
        show_default=True,
        help="Directory receiving the outputs and the manifest",
    )
    @click.option(
        "-s",
        "--seed",
        type=click.IntRange(0, MAX_SEED),
        help="Seed overriding the configured one",
    )
    @click.option(
        "--verbose", is_flag=True, help="Increase in the logging volume"
    )
    def run_command(
        config: typing.Optional[pathlib.Path],
        out_dir: pathlib.Path,
        seed: typing.Optional[int],
        verbose: bool,
    ) -> None:
        __run(name, config, out_dir, seed, verbose)


for command_name, command_help in COMMANDS_HELP.items():
    __add_command(command_name, command_help)


def __setup_pretty_traceback() -> None:
    install(show_locals=True)


def main() -> None:
    """Run the program."""
    __setup_pretty_traceback()

    cli()  # pylint: disable=no-value-for-parameter


if __name__ == "__main__":
    main()
