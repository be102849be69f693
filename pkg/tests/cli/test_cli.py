"""Module for testing the click CLI."""
import json
import pathlib
import typing

import numpy as np
import pytest
from click.testing import CliRunner, Result

from ernn.autodiff import ActivationKinds, Node, NodeKinds
from ernn.autodiff import activations, rules
from ernn.cli import cli
from ernn.helpers.files import read_csv_rows
from ernn.helpers.type_hints import Array, ArrayDict
from ernn.train import AdamState
from ernn.train import trainer

ConfigPlacer = typing.Callable[[str], str]

SMALL_CONFIG = (
    "data.seq_len: 5\n"
    "data.informative_steps: 2\n"
    "data.input_dim: 2\n"
    "data.train_size: 16\n"
    "data.test_size: 8\n"
    "model.hidden_dim: 4\n"
    "model.rank: 2\n"
    "model.k_steps: 2\n"
    "train.epochs: 2\n"
    "train.batch_size: 8\n"
)
SCALAR_CONFIG = (
    "model.hidden_dim: 1\n"
    "model.projection: false\n"
    "data.input_dim: 1\n"
    "analysis.activation: identity\n"
    "analysis.u_init: identity\n"
    "analysis.w_init: ones\n"
    "analysis.input_value: 1.0\n"
    "analysis.eta: 0.1\n"
    "analysis.iterations: 60\n"
)


def __invoke(
    command: str, config: typing.Optional[str], out_dir: pathlib.Path
) -> Result:
    arguments = [command, "--out-dir", str(out_dir)]
    if config:
        arguments.extend(["--config", config])

    return CliRunner().invoke(cli, arguments)


def __manifest(out_dir: pathlib.Path) -> typing.Dict[str, typing.Any]:
    return json.loads((out_dir / "manifest.json").read_text(encoding="utf-8"))


def test_train(tmp_path: pathlib.Path, place_config: ConfigPlacer) -> None:
    """Test a short training run and its outputs.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    config = place_config(SMALL_CONFIG)

    result = __invoke("train", config, tmp_path / "first")

    assert result.exit_code == 0, f"The run failed: {result.output}"
    rows = read_csv_rows(tmp_path / "first" / "metrics.csv")
    assert rows[0] == [
        "epoch",
        "train_loss",
        "test_loss",
        "test_acc",
        "lr",
        "seconds",
        "bptt_norm",
    ], "The metrics header is wrong."
    assert len(rows) == 3, "There is not one row per epoch."

    manifest = __manifest(tmp_path / "first")
    assert manifest["succeeded"], "The manifest reports a failure."
    assert manifest["outputs"] == [
        "metrics.csv",
        "checkpoint.json",
    ], "The manifest does not list the outputs."
    assert len(manifest["config_sha1"]) == 40, "The configuration is unhashed."

    __invoke("train", config, tmp_path / "second")
    for name in ("metrics.csv", "checkpoint.json"):
        assert (tmp_path / "first" / name).read_bytes() == (
            tmp_path / "second" / name
        ).read_bytes(), f"The two runs wrote different {name} files."


def test_invalid_configuration(
    tmp_path: pathlib.Path, place_config: ConfigPlacer
) -> None:
    """Test the exit code of configuration errors.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    result = __invoke("train", place_config("train.lr: -1\n"), tmp_path)
    assert result.exit_code == 2, "A negative rate did not exit with 2."
    assert "train.lr" in result.output, "The key is not named."
    manifest = __manifest(tmp_path)
    assert not manifest["succeeded"], "The manifest reports a success."
    assert manifest["seed"] is None, "A seed is reported for no config."
    assert manifest["outputs"] == [], "The manifest lists outputs."

    missing = tmp_path / "missing"
    result = __invoke("train", str(tmp_path / "missing.yaml"), missing)
    assert result.exit_code == 2, "A missing file did not exit with 2."
    assert (
        __manifest(missing)["config_sha1"] is None
    ), "A missing file was hashed."

    result = CliRunner().invoke(cli, ["stability", "--seed", "-1"])
    assert result.exit_code == 2, "A negative seed did not exit with 2."


def test_diverged_training(
    monkeypatch: pytest.MonkeyPatch,
    tmp_path: pathlib.Path,
    place_config: ConfigPlacer,
) -> None:
    """Test that a diverged run keeps its partial outputs.

    Args:
        monkeypatch (pytest.MonkeyPatch): Fixture replacing the optimizer
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    original = trainer.adam_step
    calls = []

    def poisoned(
        state: AdamState, params: ArrayDict, gradients: ArrayDict, lr: float
    ) -> ArrayDict:
        calls.append(lr)
        updated = original(state, params, gradients, lr)
        if len(calls) == 3:
            updated["b"] = np.full_like(updated["b"], np.inf)

        return updated

    monkeypatch.setattr(trainer, "adam_step", poisoned)

    result = __invoke("train", place_config(SMALL_CONFIG), tmp_path)

    assert result.exit_code == 3, "The divergence did not exit with 3."
    assert (
        len(read_csv_rows(tmp_path / "metrics.csv")) == 2
    ), "The metrics of the first epoch were not kept."
    assert (tmp_path / "checkpoint.json").exists(), "No checkpoint was kept."
    assert not __manifest(tmp_path)[
        "succeeded"
    ], "The manifest reports a success."


def test_phase_space(tmp_path: pathlib.Path) -> None:
    """Test the trajectories of the three cells.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
    """
    result = __invoke("phase-space", None, tmp_path)

    assert result.exit_code == 0, f"The run failed: {result.output}"
    rows = read_csv_rows(tmp_path / "trajectories.csv")
    assert rows[0] == ["step", "model", "h1", "h2"], "The header is wrong."
    assert len(rows) == 3001, "There are not 1000 steps per cell."
    assert {row[1] for row in rows[1:]} == {
        "vanilla",
        "fastrnn",
        "ernn",
    }, "A cell is missing."


def test_grad_flow(tmp_path: pathlib.Path, place_config: ConfigPlacer) -> None:
    """Test the gradient norms along a short sequence.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    config = place_config(
        "data.seq_len: 20\ndata.informative_steps: 2\nmodel.hidden_dim: 4\n"
    )

    result = __invoke("grad-flow", config, tmp_path)

    assert result.exit_code == 0, f"The run failed: {result.output}"
    rows = read_csv_rows(tmp_path / "gradnorms.csv")
    assert len(rows) == 1 + 2 * 19, "There is not one row per step and cell."
    assert all(
        float(row[2]) >= 0 for row in rows[1:]
    ), "A norm is negative."


def test_fixed_point(
    tmp_path: pathlib.Path, place_config: ConfigPlacer
) -> None:
    """Test the contraction of the scalar affine residual.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    result = __invoke("fixed-point", place_config(SCALAR_CONFIG), tmp_path)

    assert result.exit_code == 0, f"The run failed: {result.output}"
    rows = read_csv_rows(tmp_path / "convergence.csv")
    assert len(rows) == 62, "The 60 iterations were not all recorded."
    assert rows[1][:4] == ["0", "1.0", "2.0", ""], "The first row is wrong."
    for row in rows[2:]:
        assert float(row[3]) == pytest.approx(
            0.95, abs=1e-9
        ), f"The ratio of iteration {row[0]} is not 0.95."
        assert row[4] == "true", f"Descent failed at iteration {row[0]}."


def test_stability(tmp_path: pathlib.Path, place_config: ConfigPlacer) -> None:
    """Test the spectra of the sampled steps.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    config = place_config("analysis.samples: 3\nmodel.hidden_dim: 4\n")

    result = __invoke("stability", config, tmp_path)

    assert result.exit_code == 0, f"The run failed: {result.output}"
    rows = read_csv_rows(tmp_path / "spectrum.csv")
    assert len(rows) == 1 + 3 * 4, "There is not one row per eigenvalue."
    assert all(
        float(row[2]) < 0 for row in rows[1:]
    ), "An eigenvalue has a positive real part."


def test_gradcheck(
    monkeypatch: pytest.MonkeyPatch,
    tmp_path: pathlib.Path,
    place_config: ConfigPlacer,
) -> None:
    """Test the gradient check, first intact and then with a broken rule.

    Args:
        monkeypatch (pytest.MonkeyPatch): Fixture replacing the rule
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    config = place_config(SMALL_CONFIG)

    result = __invoke("gradcheck", config, tmp_path)
    assert result.exit_code == 0, f"The check failed: {result.output}"

    def doubled(
        node: Node, adjoint: Array, values: typing.List[Array], output: Array
    ) -> typing.List[typing.Optional[Array]]:
        kind = typing.cast(ActivationKinds, node.activation)

        return [2 * adjoint * activations.derivative(kind, values[0], output)]

    monkeypatch.setitem(rules.BACKWARD_RULES, NodeKinds.ACTIVATION, doubled)

    result = __invoke("gradcheck", config, tmp_path)
    assert result.exit_code == 1, "The broken rule did not exit with 1."


def test_invalid_csv_data(
    tmp_path: pathlib.Path, place_config: ConfigPlacer
) -> None:
    """Test that unusable CSV data exits as an input error.

    Args:
        tmp_path (pathlib.Path): Fixture for a temporary directory
        place_config (ConfigPlacer): Fixture writing the configuration file
    """
    data_path = tmp_path / "data.csv"
    config = place_config(
        "data.task: csv\n"
        f"data.csv_path: {data_path}\n"
        "data.seq_len: 2\n"
        "data.input_dim: 2\n"
        "data.informative_steps: 1\n"
        "model.hidden_dim: 4\n"
        "model.rank: 2\n"
        "train.epochs: 1\n"
    )

    data_path.write_text("0,1,2,3,1\nnan,1,2,3,0\n", encoding="utf-8")
    result = __invoke("train", config, tmp_path / "nan")
    assert result.exit_code == 2, "A NaN feature did not exit with 2."
    assert "row 2, column 1" in result.output, "The cell is not named."

    data_path.write_bytes(b"\xff\xfe0,1,2,3,1\n")
    result = __invoke("train", config, tmp_path / "bytes")
    assert result.exit_code == 2, "Undecodable data did not exit with 2."
