"""Module implementing a logger."""
import logging

from pypattyrn.creational.singleton import Singleton
from rich.console import Console
from rich.logging import RichHandler


class Logger(metaclass=Singleton):
    """Class modeling a logger."""

    LOGGER_NAME = "ernn"
    LOG_FORMAT = "ernn: %(process)d: %(module)s: %(lineno)d: %(message)s"

    native_logger: logging.Logger
    handler: RichHandler

    def __init__(self) -> None:
        """Initialize the object."""
        # Create a handler writing to standard error, away from the CSV and
        # report outputs
        self.handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        self.handler.setFormatter(
            logging.Formatter(self.LOG_FORMAT, datefmt="[%X]")
        )

        # Get the package logger
        self.native_logger = logging.getLogger(self.LOGGER_NAME)
        self.native_logger.addHandler(self.handler)
        self.native_logger.setLevel(logging.WARNING)

        self.native_logger.debug("The logger was initialized.")

    def set_verbosity(self, verbose: bool) -> None:
        """Set the logger to be verbose.

        Args:
            verbose (bool): Boolean indicating if the logging is verbose
        """
        if verbose:
            self.native_logger.setLevel(logging.DEBUG)
        else:
            self.native_logger.setLevel(logging.WARNING)
