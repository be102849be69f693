"""Module defining the settings of a training run."""

import dataclasses
import typing
from enum import Enum

from ernn.autodiff.activations import ActivationKinds
from ernn.cells.params import CellKinds, ModelSpec
from ernn.helpers.exceptions import RejectedInputException
from ernn.tasks.dataset import TaskKinds, TaskSpec


def _decode_spec(
    spec_type: typing.Type[typing.Any], fields: typing.Mapping[str, typing.Any]
) -> typing.Any:
    decoded = dict(fields)
    if spec_type is ModelSpec:
        decoded["kind"] = CellKinds(decoded["kind"])
        decoded["activation"] = ActivationKinds(decoded["activation"])
    else:
        decoded["kind"] = TaskKinds(decoded["kind"])

    return spec_type(**decoded)


def spec_to_dict(spec: typing.Any) -> typing.Dict[str, typing.Any]:
    """Convert a model or task description to plain values.

    Args:
        spec (typing.Any): ModelSpec or TaskSpec

    Returns:
        typing.Dict[str, typing.Any]: Fields, enumerations by value
    """
    values = {}
    for field in dataclasses.fields(spec):
        value = getattr(spec, field.name)
        values[field.name] = value.value if isinstance(value, Enum) else value

    return values


@dataclasses.dataclass(frozen=True)
class TrainConfig:
    """Settings of a training run.

    The learning rate is halved every lr_halve_every epochs. Wall-clock
    durations are recorded only on request, so that repeated runs produce
    identical outputs.
    """

    model: ModelSpec = dataclasses.field(default_factory=ModelSpec)
    task: TaskSpec = dataclasses.field(default_factory=TaskSpec)
    lr: float = 1e-2
    batch_size: int = 128
    epochs: int = 30
    lr_halve_every: int = 10
    seed: int = 0
    wall_clock: bool = False
    bptt_probe: bool = True

    def __post_init__(self) -> None:
        """Validate the settings.

        Raises:
            RejectedInputException: A setting is out of range.
        """
        if not self.lr > 0:
            raise RejectedInputException(f"learning rate {self.lr}")
        if self.batch_size < 1:
            raise RejectedInputException(f"batch size {self.batch_size}")
        if self.epochs < 0:
            raise RejectedInputException(f"{self.epochs} epochs")
        if self.lr_halve_every < 1:
            raise RejectedInputException(
                f"halving period {self.lr_halve_every}"
            )
        if self.model.k_steps < 1:
            raise RejectedInputException(f"K = {self.model.k_steps}")
        if self.seed < 0:
            raise RejectedInputException(f"seed {self.seed}")

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        """Convert the settings to plain values.

        Returns:
            typing.Dict[str, typing.Any]: Nested mapping
        """
        settings = {
            field.name: getattr(self, field.name)
            for field in dataclasses.fields(self)
        }
        settings["model"] = spec_to_dict(self.model)
        settings["task"] = spec_to_dict(self.task)

        return settings

    @staticmethod
    def from_dict(settings: typing.Mapping[str, typing.Any]) -> "TrainConfig":
        """Rebuild the settings from plain values.

        Args:
            settings (typing.Mapping[str, typing.Any]): Mapping produced by
                to_dict

        Raises:
            KeyError: A field is missing.
            ValueError: An enumeration value is unknown.

        Returns:
            TrainConfig: Settings
        """
        fields = dict(settings)
        fields["model"] = _decode_spec(ModelSpec, settings["model"])
        fields["task"] = _decode_spec(TaskSpec, settings["task"])

        return TrainConfig(**fields)
