"""Module with the checks and Jacobians built on top of backward passes."""

import dataclasses
import typing

import numpy as np

from ernn.autodiff.tape import Tape
from ernn.helpers.exceptions import (
    NumericOverflowException,
    RejectedInputException,
    TapeStateException,
)
from ernn.helpers.type_hints import Array
from ernn.logger import get_logger

logger = get_logger()

MIN_STEP = 1e-7
MAX_STEP = 1e-3
DEFAULT_TOLERANCE = 1e-6


@dataclasses.dataclass
class GradcheckReport:
    """Comparison of backward gradients with central differences.

    Coordinates whose perturbation flips a relu between its two branches are
    excluded from the comparison and only counted.
    """

    max_relative_error: float
    errors: typing.Dict[str, float]
    excluded: typing.Dict[str, int]
    checked: int

    @property
    def excluded_count(self) -> int:
        """Total number of excluded coordinates."""
        return sum(self.excluded.values())

    def offending(
        self, tolerance: float = DEFAULT_TOLERANCE
    ) -> typing.List[str]:
        """List the parameters whose error exceeds a tolerance.

        Args:
            tolerance (float): Maximum accepted relative error

        Returns:
            typing.List[str]: Parameter names
        """
        return [
            name for name, error in self.errors.items() if error > tolerance
        ]

    def passed(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        """Check if every compared coordinate is within a tolerance.

        Args:
            tolerance (float): Maximum accepted relative error

        Returns:
            bool: Boolean indicating the success
        """
        return self.max_relative_error <= tolerance


def relative_error(analytic: float, numeric: float) -> float:
    """Compute the relative gap between two derivative estimates.

    Args:
        analytic (float): Derivative from the backward pass
        numeric (float): Derivative from finite differences

    Returns:
        float: Gap divided by max(1, |analytic|, |numeric|)
    """
    return abs(analytic - numeric) / max(1.0, abs(analytic), abs(numeric))


def __perturbed_output(
    tape: Tape,
    parameters: typing.Mapping[str, Array],
    inputs: typing.Sequence[typing.Any],
    coordinate: typing.Tuple[str, typing.Tuple[int, ...]],
    delta: float,
    output: int,
) -> typing.Tuple[float, typing.Dict[int, Array]]:
    name, index = coordinate
    perturbed = dict(parameters)
    array = np.array(parameters[name], dtype=np.float64)
    array[index] += delta
    perturbed[name] = array

    tape.forward(perturbed, inputs)

    return float(tape.value(output).reshape(())), tape.relu_patterns


def __same_branches(
    first: typing.Dict[int, Array], second: typing.Dict[int, Array]
) -> bool:
    return all(
        np.array_equal(mask, second[node]) for node, mask in first.items()
    )


def gradcheck(
    tape: Tape,
    parameters: typing.Mapping[str, Array],
    inputs: typing.Sequence[typing.Any] = (),
    step: float = 1e-5,
    output: typing.Optional[int] = None,
) -> GradcheckReport:
    """Compare the backward gradients with central finite differences.

    Every coordinate of every parameter read by the tape is perturbed by
    ±step. The tape is left evaluated at the unperturbed parameters.

    Args:
        tape (Tape): Recorded computation with a scalar output
        parameters (typing.Mapping[str, Array]): Parameter arrays
        inputs (typing.Sequence[typing.Any]): Input values by slot
        step (float): Perturbation size. Defaults to 1e-5.
        output (int, optional): Checked node. Defaults to the last one.

    Raises:
        RejectedInputException: The step is out of range or the output is
            not a scalar.
        NumericOverflowException: A finite difference is not finite.

    Returns:
        GradcheckReport: Report
    """
    if not MIN_STEP <= step <= MAX_STEP:
        raise RejectedInputException(
            f"step {step} outside [{MIN_STEP}, {MAX_STEP}]"
        )

    tape.forward(parameters, inputs)
    if output is None:
        output = len(tape) - 1
    value = tape.value(output)
    if value.size != 1:
        raise RejectedInputException(f"non-scalar output {value.shape}")
    analytic = tape.backward(np.ones_like(value), output=output).parameters

    errors: typing.Dict[str, float] = {}
    excluded: typing.Dict[str, int] = {}
    checked = 0
    for name in sorted(analytic):
        errors[name] = 0.0
        excluded[name] = 0

        for index in np.ndindex(analytic[name].shape):
            plus, plus_branches = __perturbed_output(
                tape, parameters, inputs, (name, index), step, output
            )
            minus, minus_branches = __perturbed_output(
                tape, parameters, inputs, (name, index), -step, output
            )
            if not __same_branches(plus_branches, minus_branches):
                excluded[name] += 1
                continue

            numeric = (plus - minus) / (2 * step)
            if not np.isfinite(numeric):
                raise NumericOverflowException(f"difference for {name}{index}")

            error = relative_error(float(analytic[name][index]), numeric)
            errors[name] = max(errors[name], error)
            checked += 1

    tape.forward(parameters, inputs)

    report = GradcheckReport(
        max_relative_error=max(errors.values(), default=0.0),
        errors=errors,
        excluded=excluded,
        checked=checked,
    )
    if report.excluded_count:
        logger.warning(
            "%d coordinates excluded at relu kinks.", report.excluded_count
        )

    return report


def state_jacobians(
    tape: Tape,
    to_step: int,
    from_steps: typing.Iterable[int],
    sample: int = 0,
) -> typing.Dict[int, Array]:
    """Compute the Jacobians of one hidden state to several earlier ones.

    One backward pass is run per coordinate of the later state, each pass
    yielding one row of every requested Jacobian.

    Args:
        tape (Tape): Evaluated tape exposing its hidden states
        to_step (int): Later time step m
        from_steps (typing.Iterable[int]): Earlier time steps n
        sample (int): Batch entry, for batched evaluations. Defaults to 0.

    Raises:
        TapeStateException: The tape was not evaluated.
        RejectedInputException: A step is unknown or not earlier.

    Returns:
        typing.Dict[int, Array]: Jacobian ∂h_m/∂h_n by earlier step n
    """
    if not tape.forwarded:
        raise TapeStateException("forward was not run")

    target = tape.state_node(to_step)
    sources: typing.Dict[int, int] = {}
    for step in from_steps:
        if step >= to_step:
            raise RejectedInputException(
                f"step {step} does not precede step {to_step}"
            )
        sources[step] = tape.state_node(step)

    target_value = tape.value(target)
    batched = target_value.ndim == 2
    rows = target_value.shape[-1]
    jacobians = {
        step: np.zeros((rows, tape.value(node).shape[-1]))
        for step, node in sources.items()
    }

    for row in range(rows):
        seed = np.zeros_like(target_value)
        if batched:
            seed[sample, row] = 1.0
        else:
            seed[row] = 1.0

        gradients = tape.backward(seed, output=target, wrt=sources.values())
        for step, node in sources.items():
            gradient = gradients.nodes[node]
            jacobians[step][row] = gradient[sample] if batched else gradient

    return jacobians


def state_jacobian(
    tape: Tape, from_step: int, to_step: int, sample: int = 0
) -> Array:
    """Compute the Jacobian ∂h_m/∂h_n of a later hidden state.

    Args:
        tape (Tape): Evaluated tape exposing its hidden states
        from_step (int): Earlier time step n
        to_step (int): Later time step m, greater than n
        sample (int): Batch entry, for batched evaluations. Defaults to 0.

    Raises:
        RejectedInputException: The steps are unknown or not ordered.

    Returns:
        Array: Jacobian
    """
    if to_step <= from_step:
        raise RejectedInputException(
            f"to-step {to_step} is not after from-step {from_step}"
        )

    return state_jacobians(tape, to_step, [from_step], sample)[from_step]
