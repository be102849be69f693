"""Module for testing the measurements of the Euler iterations."""

import typing

import numpy as np
import pytest

from ernn.cells import CellParams
from ernn.equilibrium import (
    AnalysisSpec,
    analysis_input,
    analysis_params,
    contraction_check,
    iterate_euler,
    oracle_equilibrium,
)
from ernn.equilibrium.convergence import descent_condition
from ernn.helpers.type_hints import Array
from ernn.numerics.rng import Rng

Problem = typing.Tuple[CellParams, Array, Array]


def test_scalar_linear_rate(scalar_problem: Problem) -> None:
    """Test that the affine iterations contract by exactly 0.95.

    Args:
        scalar_problem (Problem): Scalar cell, previous state and input
    """
    cell, h_prev, x = scalar_problem
    point = oracle_equilibrium(cell, h_prev, x)

    report = iterate_euler(cell, h_prev, x, 20, point)

    assert len(report) == 21, "The start and 20 iterates were expected."
    assert report.contraction_ratios[-1] is None, "The last ratio is set."
    for ratio in report.contraction_ratios[:-1]:
        assert ratio == pytest.approx(0.95, abs=1e-9), "The ratio is not 0.95."
    assert report.tau_bound == pytest.approx(
        0.95, abs=1e-9
    ), "The bound is not 0.95."
    assert all(report.descent_condition_holds), "A step did not descend."
    assert report.rows()[0] == (
        0,
        1.0,
        2.0,
        report.contraction_ratios[0],
        True,
    ), "The first row is wrong."


def test_start_at_equilibrium(tanh_problem: Problem) -> None:
    """Test that iterations started at the root stay converged.

    Args:
        tanh_problem (Problem): Tanh cell, previous state and input
    """
    cell, h_prev, x = tanh_problem
    point = oracle_equilibrium(cell, h_prev, x)

    report = iterate_euler(cell, h_prev, x, 10, point, start=point.h_star)

    assert all(
        norm <= 1e-11 for norm in report.residual_norms
    ), "A residual grew."
    assert all(
        ratio is None for ratio in report.contraction_ratios
    ), "A ratio was defined at the root."
    assert report.tau_bound is None, "A bound was defined."


def test_stop_tolerance(scalar_problem: Problem) -> None:
    """Test the truncation of the report at a converged iterate.

    Args:
        scalar_problem (Problem): Scalar cell, previous state and input
    """
    cell, h_prev, x = scalar_problem
    point = oracle_equilibrium(cell, h_prev, x)

    report = iterate_euler(cell, h_prev, x, 60, point, stop_tolerance=0.5)

    assert report.residual_norms[-1] <= 0.5, "The last residual is large."
    assert report.residual_norms[-2] > 0.5, "The report was cut late."
    # 0.95¹³ > 0.5 ≥ 0.95¹⁴
    assert len(report) == 15, "The report was cut at the wrong place."


def test_ratios_within_contraction_bound(tanh_problem: Problem) -> None:
    """Test that the measured rate respects ‖I + η∇F‖ where it contracts.

    Args:
        tanh_problem (Problem): Tanh cell, previous state and input
    """
    cell, h_prev, x = tanh_problem
    point = oracle_equilibrium(cell, h_prev, x)

    report = iterate_euler(cell, h_prev, x, 10, point)

    assert max(report.contraction_bounds) < 1, "The map does not contract."
    bound = max(report.contraction_bounds)
    for ratio in report.contraction_ratios:
        if ratio is not None:
            assert ratio <= bound + 0.05, "A ratio exceeds the bound."


def test_descent_decreases_residual(tanh_problem: Problem) -> None:
    """Test that the residual shrinks wherever the descent condition holds.

    Args:
        tanh_problem (Problem): Tanh cell, previous state and input
    """
    cell, h_prev, x = tanh_problem
    point = oracle_equilibrium(cell, h_prev, x)

    report = iterate_euler(cell, h_prev, x, 10, point)

    norms = report.residual_norms
    for index, holds in enumerate(report.descent_condition_holds[:-1]):
        if holds:
            assert (
                norms[index + 1] < norms[index]
            ), f"The residual grew after iterate {index}."


def test_contraction_check(projected_scalar_problem: Problem) -> None:
    """Test ‖I + η∇F‖ on the scalar cell with ∇F = -0.75.

    Args:
        projected_scalar_problem (Problem): Scalar cell with P = U
    """
    cell, h_prev, x = projected_scalar_problem
    h = np.zeros(1)

    assert contraction_check(cell, h, h_prev, x, 0.0) == 1.0, "η = 0 moved."
    assert contraction_check(cell, h, h_prev, x, 0.1) == pytest.approx(
        0.925
    ), "The contraction is not 0.925."
    assert contraction_check(cell, h, h_prev, x, 10.0) == pytest.approx(
        6.5
    ), "The unstable step was not detected."


def test_descent_condition() -> None:
    """Test the first-order descent condition on ∇F = -0.5."""
    residual, jacobian = np.ones(1), np.array([[-0.5]])

    assert descent_condition(residual, jacobian, 0.1), "A small step failed."
    assert not descent_condition(
        residual, jacobian, 5.0
    ), "An overshooting step passed."
    assert not descent_condition(
        np.zeros(1), jacobian, 0.1
    ), "A converged point descended."


def __r_squared(values: typing.List[float]) -> float:
    logs = np.log(values)
    steps = np.arange(len(logs))
    slope, intercept = np.polyfit(steps, logs, 1)
    fitted = slope * steps + intercept

    return float(
        1 - np.sum((logs - fitted) ** 2) / np.sum((logs - logs.mean()) ** 2)
    )


def test_tanh_linear_rate() -> None:
    """Test that log residuals of tanh cells fall along a straight line."""
    for seed in range(41, 46):
        for hidden_dim in (8, 16):
            spec = AnalysisSpec(eta=0.5, hidden_dim=hidden_dim)
            rng = Rng(seed)
            cell = analysis_params(spec, rng)
            h_prev = rng.gaussian(hidden_dim)
            x = analysis_input(spec, rng)
            point = oracle_equilibrium(cell, h_prev, x)

            report = iterate_euler(cell, h_prev, x, 10, point)

            for name, values in (
                ("residual", report.residual_norms[3:11]),
                ("distance", report.oracle_distances[3:11]),
            ):
                assert all(
                    value > 0 for value in values
                ), f"Seed {seed} reached the root."
                assert (
                    values[-1] < values[0]
                ), f"The {name} of seed {seed} did not shrink."
                r_squared = __r_squared(values)
                assert (
                    r_squared >= 0.99
                ), f"Seed {seed}, D = {hidden_dim}: {name} R² = {r_squared}."
