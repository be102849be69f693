"""Module for orchestrating the commands of a run."""

import pathlib
import typing

from ernn.config import ExperimentConfig
from ernn.helpers.exceptions import (
    ImproperPermissionsException,
    RejectedInputException,
)
from ernn.logger import Logger
from ernn.main.commands import COMMANDS
from ernn.main.manifest import RunManifest
from ernn.main.results import CommandResult


class Main:
    """Class orchestrating the configuration, the commands and the outputs."""

    logger: Logger

    def __init__(self, verbose: bool = False) -> None:
        """Initialize the object.

        Args:
            verbose (bool): Boolean indicating if the logging is verbose.
                Defaults to False.
        """
        self.__init_logging(verbose)

    def __init_logging(self, verbose: bool) -> None:
        self.logger = Logger()
        self.logger.set_verbosity(verbose)

    @staticmethod
    def __prepare_out_dir(out_dir: pathlib.Path) -> None:
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except PermissionError as exception:
            raise ImproperPermissionsException(str(out_dir)) from exception

    def run(
        self,
        command: str,
        config_path: typing.Optional[str],
        out_dir: pathlib.Path,
        seed: typing.Optional[int] = None,
        result: typing.Optional[CommandResult] = None,
    ) -> CommandResult:
        """Run a command and describe the run in a manifest.

        The manifest is written even when the configuration is invalid or
        the command fails, listing the files written before the failure.

        Args:
            command (str): Command name, such as fixed-point
            config_path (str, optional): Configuration file
            out_dir (pathlib.Path): Output directory
            seed (int, optional): Seed overriding the configured one
            result (CommandResult, optional): Result to fill, still holding
                the written files and the summary if the command fails

        Raises:
            RejectedInputException: The command is not known.

        Returns:
            CommandResult: Result
        """
        if command not in COMMANDS:
            raise RejectedInputException(f"command {command}")

        self.__prepare_out_dir(out_dir)
        manifest = RunManifest(command, config_path, seed)
        result = result if result is not None else CommandResult()
        succeeded = False
        try:
            overrides = {"seed": seed} if seed is not None else None
            config = ExperimentConfig(config_path, overrides)
            manifest.seed = config.seed
            self.logger.native_logger.info(
                "Running %s with seed %d.", command, config.seed
            )
            COMMANDS[command](config, out_dir, result)
            succeeded = True
        finally:
            manifest.finish(result.outputs, succeeded)
            manifest.write(out_dir)

        return result
