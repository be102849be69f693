"""Module describing the runs of the commands in manifests."""

import dataclasses
import datetime
import hashlib
import json
import pathlib
import typing

from ernn.helpers.exceptions import ImproperPermissionsException
from ernn.logger import get_logger

logger = get_logger()

MANIFEST_FILENAME = "manifest.json"


def git_blob_sha1(content: bytes) -> str:
    """Hash content the way git hashes a blob object.

    Args:
        content (bytes): Content

    Returns:
        str: Hexadecimal SHA-1 of the blob header and the content
    """
    header = f"blob {len(content)}\0".encode("ascii")

    return hashlib.sha1(header + content).hexdigest()  # noqa: S324


def utc_timestamp() -> str:
    """Get the current time in ISO-8601 format.

    Returns:
        str: UTC timestamp
    """
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


@dataclasses.dataclass
class RunManifest:
    """Description of one command run."""

    command: str
    config_path: typing.Optional[str]
    seed: typing.Optional[int]
    started: str = dataclasses.field(default_factory=utc_timestamp)
    finished: typing.Optional[str] = None
    succeeded: bool = False
    outputs: typing.List[str] = dataclasses.field(default_factory=list)
    config_sha1: typing.Optional[str] = None

    def __post_init__(self) -> None:
        """Hash the configuration file, when there is one."""
        if (
            self.config_path
            and self.config_sha1 is None
            and pathlib.Path(self.config_path).is_file()
        ):
            self.config_sha1 = git_blob_sha1(
                pathlib.Path(self.config_path).read_bytes()
            )

    def finish(
        self, outputs: typing.Iterable[pathlib.Path], succeeded: bool
    ) -> None:
        """Record the end of the run.

        Args:
            outputs (typing.Iterable[pathlib.Path]): Written files
            succeeded (bool): Boolean indicating if the command succeeded
        """
        self.finished = utc_timestamp()
        self.succeeded = succeeded
        self.outputs = [path.name for path in outputs]

    def write(self, out_dir: pathlib.Path) -> pathlib.Path:
        """Write the manifest to its file in the output directory.

        Args:
            out_dir (pathlib.Path): Output directory

        Raises:
            ImproperPermissionsException: Improper permissions

        Returns:
            pathlib.Path: Written path
        """
        path = out_dir / MANIFEST_FILENAME
        content = json.dumps(dataclasses.asdict(self), indent=2)

        try:
            path.write_text(content + "\n", encoding="utf-8")
        except PermissionError as exception:
            raise ImproperPermissionsException(str(path)) from exception

        logger.info("The manifest was written to %s.", path)

        return path
