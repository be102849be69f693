"""Package for implementing the command line interface."""

from ernn.cli.cli import cli, exit_code, main
