"""Module for testing the logger."""

import logging

from ernn.logger import Logger, get_logger


def test_single_logger() -> None:
    """Test that every caller shares the package logger."""
    assert Logger() is Logger(), "The logger is not a singleton."
    assert get_logger() is logging.getLogger(
        "ernn"
    ), "The package logger is not returned."
    assert (
        len(get_logger().handlers) == 1
    ), "The handler was attached more than once."


def test_verbosity() -> None:
    """Test the switch between the quiet and the verbose levels."""
    logger = Logger()

    logger.set_verbosity(True)
    assert get_logger().level == logging.DEBUG, "The logger is not verbose."

    logger.set_verbosity(False)
    assert get_logger().level == logging.WARNING, "The logger is verbose."
