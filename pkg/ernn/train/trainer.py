"""Module running the training loop and the evaluations."""

import copy
import dataclasses
import time
import typing

import numpy as np

from ernn.autodiff.gradients import state_jacobian
from ernn.cells.network import SequenceGraph
from ernn.cells.params import Model, init_model
from ernn.helpers.exceptions import (
    DimensionMismatchException,
    NumericOverflowException,
    RejectedInputException,
    TrainingDivergedException,
)
from ernn.logger import get_logger
from ernn.numerics.linalg import spectral_norm
from ernn.numerics.rng import Rng
from ernn.tasks.dataset import SequenceDataset
from ernn.train.checkpoint import Checkpoint
from ernn.train.config import TrainConfig
from ernn.train.loss import accuracy, mean_cross_entropy
from ernn.train.metrics import EpochMetrics
from ernn.train.optimizer import AdamState, adam_step, lr_schedule

logger = get_logger()


@dataclasses.dataclass(frozen=True)
class Evaluation:
    """Loss and accuracy of a model on a dataset."""

    loss: float
    accuracy: float


def __check_fits(config: TrainConfig, data: SequenceDataset) -> None:
    if data.input_dim != config.model.input_dim:
        raise DimensionMismatchException(
            f"{data.input_dim} features for input dimension"
            f" {config.model.input_dim}"
        )
    if data.classes > config.model.classes:
        raise DimensionMismatchException(
            f"{data.classes} classes for {config.model.classes} outputs"
        )


def evaluate_model(
    model: Model,
    data: SequenceDataset,
    batch_size: int,
    graph: typing.Optional[SequenceGraph] = None,
) -> Evaluation:
    """Evaluate a model batch by batch, without changing it.

    Args:
        model (Model): Model
        data (SequenceDataset): Dataset
        batch_size (int): Sequences per forward pass
        graph (SequenceGraph, optional): Recorded graph to reuse

    Raises:
        DimensionMismatchException: The data does not fit the model.

    Returns:
        Evaluation: Mean loss and accuracy
    """
    if graph is None or graph.seq_len != data.seq_len:
        graph = SequenceGraph(model.cell, data.seq_len)

    logits = []
    for start in range(0, len(data), batch_size):
        batch = data.sequences[start : start + batch_size]
        logits.append(graph.predict_logits(model, batch))
    all_logits = (
        np.concatenate(logits)
        if logits
        else np.zeros((0, model.readout.classes))
    )

    return Evaluation(
        loss=mean_cross_entropy(all_logits, data.labels) if logits else 0.0,
        accuracy=accuracy(all_logits, data.labels),
    )


def evaluate(checkpoint: Checkpoint, data: SequenceDataset) -> Evaluation:
    """Evaluate the model of a checkpoint.

    Args:
        checkpoint (Checkpoint): Checkpoint
        data (SequenceDataset): Dataset

    Raises:
        DimensionMismatchException: The data does not fit the model.

    Returns:
        Evaluation: Mean loss and accuracy
    """
    __check_fits(checkpoint.config, data)

    return evaluate_model(
        checkpoint.model, data, checkpoint.config.batch_size
    )


def bptt_norm(
    model: Model, graph: SequenceGraph, sequence: np.ndarray
) -> float:
    """Measure ‖∂h_T/∂h_1‖₂ along one sequence.

    Args:
        model (Model): Model
        graph (SequenceGraph): Graph unrolled over the sequence length
        sequence (np.ndarray): T×d sequence

    Returns:
        float: Spectral norm
    """
    graph.evaluate(model, sequence[np.newaxis])

    return spectral_norm(state_jacobian(graph.tape, 1, graph.seq_len))


def _snapshot(
    config: TrainConfig,
    model: Model,
    adam: AdamState,
    rng: Rng,
    epoch: int,
    history: typing.List[EpochMetrics],
) -> Checkpoint:
    return Checkpoint(
        config=config,
        model=model,
        adam=copy.deepcopy(adam),
        rng_state=rng.state,
        epoch=epoch,
        metrics=list(history),
    )


def fit(
    config: TrainConfig,
    train: SequenceDataset,
    test: SequenceDataset,
    resume: typing.Optional[Checkpoint] = None,
) -> typing.Tuple[Checkpoint, typing.List[EpochMetrics]]:
    """Train a model with Adam on mini-batches of the training split.

    Every epoch shuffles the training split with the run generator, walks
    it in batches, the last one possibly shorter, and evaluates the test
    split. A resumed run continues the stored stream of shuffles.

    Args:
        config (TrainConfig): Run settings
        train (SequenceDataset): Training split
        test (SequenceDataset): Test split
        resume (Checkpoint, optional): Checkpoint to continue from

    Raises:
        RejectedInputException: The training split is empty.
        DimensionMismatchException: The data does not fit the model.
        TrainingDivergedException: A value overflowed. The last checkpoint
            with finite values is attached.

    Returns:
        typing.Tuple[Checkpoint, typing.List[EpochMetrics]]: Final
            checkpoint and metric history
    """
    if len(train) == 0:
        raise RejectedInputException("empty training split")
    __check_fits(config, train)
    __check_fits(config, test)
    if train.seq_len != test.seq_len:
        raise DimensionMismatchException(
            f"sequence lengths {train.seq_len} and {test.seq_len}"
        )

    if resume is None:
        config = dataclasses.replace(
            config,
            model=dataclasses.replace(config.model, seq_len=train.seq_len),
        )
        rng = Rng(config.seed)
        model = init_model(config.model, rng)
        adam = AdamState.zeros(model.arrays())
        first_epoch = 0
        history: typing.List[EpochMetrics] = []
    else:
        config = dataclasses.replace(config, model=resume.config.model)
        rng = Rng.from_state(config.seed, resume.rng_state)
        model = resume.model
        adam = copy.deepcopy(resume.adam)
        first_epoch = resume.epoch
        history = list(resume.metrics)

    graph = SequenceGraph(model.cell, train.seq_len)
    last_good = _snapshot(config, model, adam, rng, first_epoch, history)

    for epoch in range(first_epoch, config.epochs):
        started = time.perf_counter()
        lr = lr_schedule(config, epoch)
        order = rng.permutation(len(train))

        total_loss = 0.0
        try:
            for start in range(0, len(train), config.batch_size):
                batch = order[start : start + config.batch_size]
                loss, gradients = graph.loss_and_gradients(
                    model, train.sequences[batch], train.labels[batch]
                )
                total_loss += loss * len(batch)
                model = model.with_arrays(
                    adam_step(adam, model.arrays(), gradients, lr)
                )

            evaluation = evaluate_model(
                model, test, config.batch_size, graph
            )
            probe = None
            if config.bptt_probe and train.seq_len >= 2 and len(test):
                probe = bptt_norm(model, graph, test.sequences[0])
        except NumericOverflowException as exception:
            raise TrainingDivergedException(
                f"epoch {epoch + 1}: {exception}", checkpoint=last_good
            ) from exception

        metrics = EpochMetrics(
            epoch=epoch + 1,
            train_loss=total_loss / len(train),
            test_loss=evaluation.loss,
            test_acc=evaluation.accuracy,
            lr=lr,
            seconds=(
                time.perf_counter() - started if config.wall_clock else 0.0
            ),
            bptt_norm=probe,
        )
        history.append(metrics)
        logger.info(
            "Epoch %d: train loss %.6f, test loss %.6f, test accuracy %.4f.",
            metrics.epoch,
            metrics.train_loss,
            metrics.test_loss,
            metrics.test_acc,
        )

        last_good = _snapshot(config, model, adam, rng, epoch + 1, history)

    return last_good, history
