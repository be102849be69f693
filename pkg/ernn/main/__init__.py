"""Package for storing the orchestration of the commands."""

from ernn.main.commands import COMMANDS
from ernn.main.main import Main
from ernn.main.manifest import MANIFEST_FILENAME, RunManifest
from ernn.main.results import CommandResult, ResultTable
