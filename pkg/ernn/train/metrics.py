"""Module defining the per-epoch training metrics."""

import dataclasses
import typing

METRICS_HEADER = (
    "epoch",
    "train_loss",
    "test_loss",
    "test_acc",
    "lr",
    "seconds",
    "bptt_norm",
)


@dataclasses.dataclass(frozen=True)
class EpochMetrics:
    """Measurements taken at the end of one epoch.

    The BPTT norm is ‖∂h_T/∂h_1‖₂ on the first test sequence, None when it
    was not probed.
    """

    epoch: int
    train_loss: float
    test_loss: float
    test_acc: float
    lr: float
    seconds: float = 0.0
    bptt_norm: typing.Optional[float] = None

    def row(self) -> typing.Tuple[typing.Any, ...]:
        """Get the values in the order of the header.

        Returns:
            typing.Tuple[typing.Any, ...]: Row
        """
        return tuple(getattr(self, name) for name in METRICS_HEADER)

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        """Convert the metrics to plain values.

        Returns:
            typing.Dict[str, typing.Any]: Values by column
        """
        return dict(zip(METRICS_HEADER, self.row()))

    @staticmethod
    def from_dict(values: typing.Mapping[str, typing.Any]) -> "EpochMetrics":
        """Rebuild the metrics from plain values.

        Args:
            values (typing.Mapping[str, typing.Any]): Values by column

        Raises:
            KeyError: A column is missing.

        Returns:
            EpochMetrics: Metrics
        """
        return EpochMetrics(**{name: values[name] for name in METRICS_HEADER})
