"""Module for testing the experiment configuration."""

import typing

import pytest

from ernn.autodiff import ActivationKinds
from ernn.cells import CellKinds
from ernn.config import ExperimentConfig, StartKinds
from ernn.helpers.exceptions import (
    ConfigFileNotExistsException,
    InvalidConfigStructureException,
    InvalidConfigValueException,
    UnknownConfigKeyException,
)
from ernn.tasks import TaskKinds

ConfigPlacer = typing.Callable[[str], str]


def test_default_configuration() -> None:
    """Test the values used when no file is given."""
    config = ExperimentConfig()

    assert config["train.lr"] == 1e-2, "The default learning rate is wrong."
    assert config["model.kind"] == CellKinds.ERNN, "The default cell is wrong."
    assert config["analysis.input_value"] is None, "The input is not unset."
    assert config.seed == 0, "The default seed is wrong."

    spec = config.model_spec()
    assert (spec.hidden_dim, spec.input_dim, spec.seq_len) == (
        16,
        4,
        200,
    ), "The model does not follow the data."


def test_valid_configuration(place_config: ConfigPlacer) -> None:
    """Test the loading and the conversion of a flat file.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    filename = place_config(
        "model.kind: vanilla\n"
        "model.activation: tanh\n"
        "model.projection: 'false'\n"
        "train.lr: 1\n"
        "train.epochs: '3'\n"
        "analysis.start: oracle\n"
        "analysis.input_value: 0.25\n"
        "seed: 4\n"
    )

    config = ExperimentConfig(filename)

    assert config["model.kind"] == CellKinds.VANILLA, "The cell is wrong."
    assert (
        config["model.activation"] == ActivationKinds.TANH
    ), "The activation is wrong."
    assert config["model.projection"] is False, "The string was not parsed."
    assert isinstance(config["train.lr"], float), "The rate is not a real."
    assert config["train.epochs"] == 3, "The string was not converted."
    assert (
        config["analysis.start"] == StartKinds.ORACLE
    ), "The start is wrong."

    train_config = config.train_config()
    assert train_config.seed == 4, "The seed did not reach the run."
    assert train_config.task.seed == 4, "The seed did not reach the task."
    assert (
        train_config.model.kind == CellKinds.VANILLA
    ), "The cell did not reach the run."
    assert (
        config.analysis_spec().input_value == 0.25
    ), "The input value did not reach the analysis."
    assert (
        config.task_spec().kind == TaskKinds.NOISE_PADDED
    ), "The default task changed."


def test_json_and_empty_files(place_config: ConfigPlacer) -> None:
    """Test files written with JSON syntax or without content.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    config = ExperimentConfig(place_config('{"seed": 3, "data.seq_len": 8}'))
    assert config.seed == 3, "The JSON file was not read."
    assert config["data.seq_len"] == 8, "The JSON file was not read."

    config = ExperimentConfig(place_config(""))
    assert config.seed == 0, "The empty file did not give the defaults."


def test_overrides(place_config: ConfigPlacer) -> None:
    """Test that command line values take precedence over the file.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    filename = place_config("seed: 4\n")

    config = ExperimentConfig(filename, {"seed": 9})

    assert config.seed == 9, "The override was ignored."


def test_invalid_structure(place_config: ConfigPlacer) -> None:
    """Test the rejection of nested, listed and broken files.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    for text in ("model:\n  kind: ernn\n", "- seed\n", "seed: [1, 2\n"):
        with pytest.raises(InvalidConfigStructureException) as execution:
            ExperimentConfig(place_config(text))
        assert execution.value, f"The structure {text!r} was accepted."


def test_invalid_keys(place_config: ConfigPlacer) -> None:
    """Test the rejection of unknown keys.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    with pytest.raises(UnknownConfigKeyException) as execution:
        ExperimentConfig(place_config("train.momentum: 0.9\n"))
    assert "train.momentum" in str(execution.value), "The key is not named."

    with pytest.raises(UnknownConfigKeyException) as execution:
        _ = ExperimentConfig()["train.momentum"]
    assert execution.value, "An unknown key was read."


def test_invalid_values(place_config: ConfigPlacer) -> None:
    """Test the rejection of values of wrong type or range.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    for text, key in (
        ("train.lr: -1\n", "train.lr"),
        ("train.epochs: true\n", "train.epochs"),
        ("model.kind: lstm\n", "model.kind"),
        ("model.hidden_dim: 0\n", "model.hidden_dim"),
        ("data.classes: 1\n", "data.classes"),
        ("data.train_fraction: 1.5\n", "data.train_fraction"),
        ("seed: -2\n", "seed"),
    ):
        with pytest.raises(InvalidConfigValueException) as execution:
            ExperimentConfig(place_config(text))
        assert key in str(execution.value), f"The key {key} is not named."


def test_inconsistent_task(place_config: ConfigPlacer) -> None:
    """Test the rejection of a segment longer than the sequences.

    Args:
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    config = ExperimentConfig(
        place_config("data.seq_len: 5\ndata.informative_steps: 6\n")
    )

    with pytest.raises(InvalidConfigValueException) as execution:
        config.task_spec()
    assert "data.informative_steps = 6" in str(
        execution.value
    ), "The segment length is not named."


def test_rejected_task_field(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that a task field rejected late names its own key.

    Args:
        monkeypatch (pytest.MonkeyPatch): Fixture editing the loaded values
    """
    config = ExperimentConfig()

    for key in ("data.noise_std", "data.walk_variance"):
        with monkeypatch.context() as patch:
            patch.setitem(config.configuration, key, -1.0)
            with pytest.raises(InvalidConfigValueException) as execution:
                config.task_spec()
        assert f"{key} = -1.0" in str(
            execution.value
        ), f"The rejection does not name {key}."


def test_missing_file() -> None:
    """Test the rejection of a file that does not exist."""
    with pytest.raises(ConfigFileNotExistsException) as execution:
        ExperimentConfig("/root/pretty_sure_this_not_exists.yaml")
    assert execution.value, "The missing file was not detected."
