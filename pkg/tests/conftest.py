"""Global pytest configuration."""
import pathlib
import typing

import pytest

ConfigPlacer = typing.Callable[[str], str]


@pytest.fixture(name="place_config")
def fixture_place_config(tmp_path: pathlib.Path) -> ConfigPlacer:
    """Provide a writer of configuration files in a temporary directory.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory

    Returns:
        ConfigPlacer: Function writing a text and returning the file name
    """

    def place(text: str) -> str:
        path = tmp_path / "config.yaml"
        path.write_text(text, encoding="utf-8")

        return str(path)

    return place
