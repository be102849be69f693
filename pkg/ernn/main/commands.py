"""Module implementing the commands producing the experiment outputs."""

import dataclasses
import pathlib
import typing

import numpy as np

from ernn.autodiff.gradients import gradcheck
from ernn.cells.network import SequenceGraph
from ernn.cells.params import (
    CellKinds,
    CellParams,
    Model,
    ReadoutParams,
    init_model,
)
from ernn.cells.steps import ernn_step
from ernn.config import ExperimentConfig, PointKinds, StartKinds
from ernn.equilibrium.analysis import analysis_input, analysis_params
from ernn.equilibrium.convergence import iterate_euler
from ernn.equilibrium.oracle import RESIDUAL_TOLERANCE, oracle_equilibrium
from ernn.equilibrium.stability import bptt_norm_profile, stability_spectrum
from ernn.helpers.exceptions import (
    CheckFailedException,
    TrainingDivergedException,
)
from ernn.helpers.type_hints import Array
from ernn.logger import get_logger
from ernn.main.results import (
    CONVERGENCE_HEADER,
    GRADCHECK_HEADER,
    GRADNORMS_HEADER,
    SPECTRUM_HEADER,
    STABILITY_SUMMARY_HEADER,
    TRAJECTORIES_HEADER,
    CommandResult,
    ResultTable,
)
from ernn.numerics.linalg import spectral_norm
from ernn.numerics.rng import Rng
from ernn.tasks.dataset import TaskKinds, TaskSpec
from ernn.tasks.generators import (
    DEFAULT_WALK_STEPS,
    gen_noise_padded,
    gen_random_walk,
)
from ernn.tasks.loader import load_task, sample_batch
from ernn.train.checkpoint import Checkpoint, save_checkpoint
from ernn.train.metrics import METRICS_HEADER
from ernn.train.trainer import fit

logger = get_logger()

CHECKPOINT_FILENAME = "checkpoint.json"
PHASE_SPACE_MODELS = (CellKinds.VANILLA, CellKinds.FASTRNN, CellKinds.ERNN)
GRAD_FLOW_MODELS = (CellKinds.ERNN, CellKinds.VANILLA)
PHASE_SPACE_DIM = 2
GRADCHECK_MAX_HIDDEN_DIM = 8
GRADCHECK_MAX_STEPS = 4
GRADCHECK_MAX_ITERATIONS = 2
GRADCHECK_BATCH = 2

Command = typing.Callable[
    [ExperimentConfig, pathlib.Path, CommandResult], None
]


def __zero_readout(hidden_dim: int) -> ReadoutParams:
    return ReadoutParams(np.zeros((2, hidden_dim)), np.zeros(2))


def __save_training(
    checkpoint: Checkpoint, out_dir: pathlib.Path, result: CommandResult
) -> None:
    metrics = ResultTable(
        "metrics",
        METRICS_HEADER,
        (metrics.row() for metrics in checkpoint.metrics),
    )
    result.save(metrics, out_dir)
    result.outputs.append(
        save_checkpoint(checkpoint, out_dir / CHECKPOINT_FILENAME)
    )
    result.summary = metrics


def train(
    config: ExperimentConfig, out_dir: pathlib.Path, result: CommandResult
) -> None:
    """Train a model and write its metrics and final checkpoint.

    A diverged run still writes the metrics and the checkpoint of the last
    epoch with finite values.

    Args:
        config (ExperimentConfig): Configuration
        out_dir (pathlib.Path): Output directory
        result (CommandResult): Result collecting the written files

    Raises:
        TrainingDivergedException: A value overflowed during training.
    """
    train_config = config.train_config()
    train_split, test_split = load_task(
        train_config.task, Rng(train_config.task.seed)
    )

    try:
        checkpoint, _ = fit(train_config, train_split, test_split)
    except TrainingDivergedException as exception:
        if exception.checkpoint is not None:
            __save_training(exception.checkpoint, out_dir, result)
        raise

    __save_training(checkpoint, out_dir, result)


def phase_space(
    config: ExperimentConfig, out_dir: pathlib.Path, result: CommandResult
) -> None:
    """Record the two-dimensional state trajectories driven by a random walk.

    The vanilla, FastRNN and ERNN cells share their recurrent matrix and
    input weights.

    Args:
        config (ExperimentConfig): Configuration
        out_dir (pathlib.Path): Output directory
        result (CommandResult): Result collecting the written files
    """
    walk_spec = TaskSpec(
        kind=TaskKinds.RANDOM_WALK,
        seq_len=DEFAULT_WALK_STEPS,
        input_dim=1,
        informative_steps=0,
        walk_variance=config["data.walk_variance"],
    )
    walk = gen_random_walk(walk_spec, Rng(config.seed))

    table = ResultTable("trajectories", TRAJECTORIES_HEADER)
    for kind in PHASE_SPACE_MODELS:
        spec = dataclasses.replace(
            config.analysis_spec(kind),
            hidden_dim=PHASE_SPACE_DIM,
            input_dim=1,
        )
        cell = analysis_params(spec, Rng(config.seed))
        graph = SequenceGraph(cell, len(walk))
        states = graph.hidden_states(
            Model(cell, __zero_readout(PHASE_SPACE_DIM)), walk[np.newaxis]
        )[0]

        for step, state in enumerate(states, start=1):
            table.add_row(step, kind.value, state[0], state[1])

    result.save(table, out_dir)


def sample_sequence(config: ExperimentConfig, rng: Rng) -> Array:
    """Draw one input sequence of the configured task.

    Args:
        config (ExperimentConfig): Configuration
        rng (Rng): Generator

    Returns:
        Array: T×d sequence, from the noise padded task when configured and
            standard Gaussian otherwise
    """
    task = config.task_spec()
    if task.kind == TaskKinds.NOISE_PADDED:
        return gen_noise_padded(task, 1, rng).sequences[0]

    return rng.gaussian_matrix(task.seq_len, task.input_dim)


def grad_flow(
    config: ExperimentConfig, out_dir: pathlib.Path, result: CommandResult
) -> None:
    """Measure ‖∂h_T/∂h_n‖₂ along one sequence for ERNN and vanilla cells.

    Args:
        config (ExperimentConfig): Configuration
        out_dir (pathlib.Path): Output directory
        result (CommandResult): Result collecting the written files
    """
    sequence = sample_sequence(config, Rng(config.seed))

    table = ResultTable("gradnorms", GRADNORMS_HEADER)
    for kind in GRAD_FLOW_MODELS:
        cell = analysis_params(config.analysis_spec(kind), Rng(config.seed))
        norms = bptt_norm_profile(cell, sequence)
        for step, norm in enumerate(norms, start=1):
            table.add_row(step, kind.value, norm)

    result.save(table, out_dir)


def fixed_point(
    config: ExperimentConfig, out_dir: pathlib.Path, result: CommandResult
) -> None:
    """Compare the Euler iterates of one ERNN step with a Newton equilibrium.

    The iterates start at 0, or at the equilibrium itself, and stop once the
    residual falls within the Newton tolerance.

    Args:
        config (ExperimentConfig): Configuration
        out_dir (pathlib.Path): Output directory
        result (CommandResult): Result collecting the written files

    Raises:
        NonConvergenceException: The Newton method did not converge.
    """
    spec = config.analysis_spec()
    rng = Rng(config.seed)
    cell = analysis_params(spec, rng)
    inputs = analysis_input(spec, rng)
    h_prev = np.zeros(spec.hidden_dim)

    oracle = oracle_equilibrium(cell, h_prev, inputs)
    start = (
        oracle.h_star
        if config["analysis.start"] == StartKinds.ORACLE
        else None
    )
    report = iterate_euler(
        cell,
        h_prev,
        inputs,
        spec.iterations,
        oracle,
        start=start,
        stop_tolerance=RESIDUAL_TOLERANCE,
    )
    logger.info("Measured contraction bound: %s.", report.tau_bound)

    table = ResultTable("convergence", CONVERGENCE_HEADER, report.rows())
    result.summary = table
    result.save(table, out_dir)


def evaluation_points(
    config: ExperimentConfig, cell: CellParams, rng: Rng
) -> typing.List[typing.Tuple[Array, Array]]:
    """Sample the (h_prev, x) pairs at which the stability is evaluated.

    Dataset points draw one sequence of the configured task per sample and a
    uniform step t of it. The previous state is the one the cell reaches from
    0 over the first t - 1 inputs, and x is the t-th input. Gaussian points
    draw both vectors independently.

    Args:
        config (ExperimentConfig): Configuration
        cell (CellParams): ERNN cell
        rng (Rng): Generator, drawn after the cell

    Returns:
        typing.List[typing.Tuple[Array, Array]]: Previous states and inputs
    """
    samples = config["analysis.samples"]
    if config["analysis.points"] == PointKinds.GAUSSIAN:
        spec = config.analysis_spec()

        return [
            (rng.gaussian(cell.hidden_dim), analysis_input(spec, rng))
            for _ in range(samples)
        ]

    batch = sample_batch(config.task_spec(), samples, rng)
    points = []
    for sequence in batch:
        step = rng.below(len(sequence))
        state = np.zeros(cell.hidden_dim)
        for inputs in sequence[:step]:
            state = ernn_step(cell, state, inputs)
        points.append((state, sequence[step]))

    return points


def stability(
    config: ExperimentConfig, out_dir: pathlib.Path, result: CommandResult
) -> None:
    """Compute the residual Jacobian spectrum at sampled ERNN steps.

    Every sample evaluates the spectrum at the state the cell computes from
    an evaluation point.

    Args:
        config (ExperimentConfig): Configuration
        out_dir (pathlib.Path): Output directory
        result (CommandResult): Result collecting the written files
    """
    spec = config.analysis_spec()
    rng = Rng(config.seed)
    cell = analysis_params(spec, rng)

    transition_norm = spectral_norm(cell.transition())
    if transition_norm > cell.gamma:
        logger.warning(
            "The sufficient condition fails: ‖U‖₂ = %s > γ = %s.",
            transition_norm,
            cell.gamma,
        )

    table = ResultTable("spectrum", SPECTRUM_HEADER)
    summary = ResultTable("stability", STABILITY_SUMMARY_HEADER)
    points = evaluation_points(config, cell, rng)
    for sample, (h_prev, inputs) in enumerate(points):
        state = ernn_step(cell, h_prev, inputs)

        spectrum = stability_spectrum(cell, state, h_prev, inputs)
        for index, (real, imaginary) in enumerate(spectrum.pairs()):
            table.add_row(sample, index, real, imaginary)
        summary.add_row(
            sample, float(spectrum.real_parts.max()), transition_norm
        )

    result.summary = summary
    result.save(table, out_dir)


def gradcheck_command(
    config: ExperimentConfig, _: pathlib.Path, result: CommandResult
) -> None:
    """Check the loss gradients of every cell kind on a small problem.

    The hidden dimension is capped at 8 and the length at 4 steps. Each
    equilibrium takes at most 2 Euler iterations.

    Args:
        config (ExperimentConfig): Configuration
        _ (pathlib.Path): Output directory, unused
        result (CommandResult): Result receiving the report

    Raises:
        CheckFailedException: A relative error exceeds 1e-6.
    """
    base = config.model_spec()
    hidden_dim = min(base.hidden_dim, GRADCHECK_MAX_HIDDEN_DIM)
    seq_len = min(base.seq_len, GRADCHECK_MAX_STEPS)

    table = ResultTable("gradcheck", GRADCHECK_HEADER)
    offending = []
    for kind in CellKinds:
        spec = dataclasses.replace(
            base,
            kind=kind,
            hidden_dim=hidden_dim,
            rank=min(base.rank, hidden_dim),
            seq_len=seq_len,
            k_steps=min(base.k_steps, GRADCHECK_MAX_ITERATIONS),
        )
        rng = Rng(config.seed)
        model = init_model(spec, rng)
        sequences = rng.gaussian(
            GRADCHECK_BATCH * seq_len * spec.input_dim
        ).reshape(GRADCHECK_BATCH, seq_len, spec.input_dim)
        labels = np.array(
            [rng.below(spec.classes) for _ in range(GRADCHECK_BATCH)]
        )

        graph = SequenceGraph(model.cell, seq_len)
        report = gradcheck(
            graph.tape,
            model.arrays(),
            graph.inputs(sequences, labels),
            output=graph.loss,
        )
        table.add_row(
            kind.value,
            report.max_relative_error,
            report.checked,
            report.excluded_count,
            report.passed(),
        )
        offending.extend(
            f"{kind.value}.{name}" for name in report.offending()
        )

    result.summary = table
    if offending:
        raise CheckFailedException(", ".join(offending))


COMMANDS: typing.Dict[str, Command] = {
    "train": train,
    "phase-space": phase_space,
    "grad-flow": grad_flow,
    "fixed-point": fixed_point,
    "stability": stability,
    "gradcheck": gradcheck_command,
}
