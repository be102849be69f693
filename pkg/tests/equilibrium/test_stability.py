"""Module for testing the spectra, the implicit Jacobian and BPTT norms."""

import dataclasses
import typing

import numpy as np
import pytest

from ernn.autodiff import state_jacobian
from ernn.cells import (
    ActivationKinds,
    CellKinds,
    CellParams,
    Model,
    ReadoutParams,
    SequenceGraph,
    ernn_step,
)
from ernn.equilibrium import (
    AnalysisSpec,
    EquilibriumPoint,
    UInit,
    analysis_input,
    analysis_params,
    bptt_norm_profile,
    fixed_point_map_jacobian,
    implicit_state_jacobian,
    oracle_equilibrium,
    stability_spectrum,
)
from ernn.helpers.exceptions import (
    RejectedInputException,
    SingularMatrixException,
)
from ernn.helpers.type_hints import Array
from ernn.numerics.rng import Rng

Problem = typing.Tuple[CellParams, Array, Array]

PROFILE_SPEC = AnalysisSpec(hidden_dim=16, input_dim=2, iterations=5)


def test_linear_spectrum() -> None:
    """Test the spectrum of the identity cell with P = U = I/2."""
    spec = AnalysisSpec(
        activation=ActivationKinds.IDENTITY,
        hidden_dim=2,
        input_dim=1,
        u_init=UInit.IDENTITY,
    )
    cell = analysis_params(spec, Rng(40))

    spectrum = stability_spectrum(cell, np.zeros(2), np.zeros(2), np.ones(1))

    assert np.allclose(
        spectrum.real_parts, [-0.75, -0.75]
    ), "The eigenvalues are not -0.75."
    assert np.allclose(spectrum.imaginary_parts, 0.0), "A rotation appeared."


def test_inactive_relu_spectrum() -> None:
    """Test that switched-off relu units leave only the damping -γI."""
    spec = AnalysisSpec(
        activation=ActivationKinds.RELU,
        u_init=UInit.IDENTITY,
        bias=-100.0,
        input_value=0.0,
    )
    cell = analysis_params(spec, Rng(41))
    zeros = np.zeros(spec.hidden_dim)

    spectrum = stability_spectrum(
        cell, zeros, zeros, analysis_input(spec, Rng(42))
    )

    assert np.array_equal(
        spectrum.real_parts, np.full(spec.hidden_dim, -1.0)
    ), "The eigenvalues are not -γ."


def test_contractive_transitions_are_stable() -> None:
    """Test that ‖U‖₂ = 0.9 keeps every eigenvalue in the left half-plane."""
    spec = AnalysisSpec(u_norm=0.9)

    for seed in range(100):
        rng = Rng(seed)
        cell = analysis_params(spec, rng)
        h_prev, x = rng.gaussian(spec.hidden_dim), analysis_input(spec, rng)
        state = ernn_step(cell, h_prev, x)

        spectrum = stability_spectrum(cell, state, h_prev, x)

        assert (
            spectrum.spectral_abscissa < 0
        ), f"Seed {seed} has an unstable eigenvalue."


def test_implicit_jacobian(tanh_problem: Problem) -> None:
    """Test that the equilibrium moves against the previous state.

    Args:
        tanh_problem (Problem): Tanh cell, previous state and input
    """
    cell, h_prev, x = tanh_problem
    point = oracle_equilibrium(cell, h_prev, x)

    jacobian = implicit_state_jacobian(cell, point, h_prev, x)

    assert np.allclose(
        jacobian, -np.eye(cell.hidden_dim), atol=1e-8, rtol=0
    ), "The implicit Jacobian is not -I."


def test_implicit_jacobian_errors(tanh_problem: Problem) -> None:
    """Test the rejection of non-equilibria and singular residuals.

    Args:
        tanh_problem (Problem): Tanh cell, previous state and input
    """
    cell, h_prev, x = tanh_problem
    with pytest.raises(RejectedInputException) as execution:
        implicit_state_jacobian(
            cell, EquilibriumPoint(h_prev, 1.0, 0), h_prev, x
        )
    assert execution.value, "A non-equilibrium was differentiated."

    singular = CellParams(
        kind=CellKinds.ERNN,
        activation=ActivationKinds.IDENTITY,
        W=np.zeros((2, 1)),
        b=np.zeros(2),
        V=np.array([[0.0], [1.0]]),
        H=np.array([[0.0, -1.0]]),
        step_sizes=np.ones(1),
    )
    zeros = np.zeros(2)
    with pytest.raises(SingularMatrixException) as execution:
        implicit_state_jacobian(
            singular, EquilibriumPoint(zeros, 0.0, 0), zeros, np.zeros(1)
        )
    assert execution.value, "A singular residual Jacobian was inverted."


def test_unrolled_jacobian_approaches_implicit() -> None:
    """Test that five unrolled iterations nearly reach -I."""
    rng = Rng(43)
    cell = analysis_params(PROFILE_SPEC, rng)
    model = Model(cell, ReadoutParams(np.zeros((2, 16)), np.zeros(2)))
    sequences = rng.gaussian(2 * 2).reshape(1, 2, 2)
    graph = SequenceGraph(cell, 2)
    graph.evaluate(model, sequences)

    gap = state_jacobian(graph.tape, 1, 2) + np.eye(16)

    assert (
        np.max(np.sum(np.abs(gap), axis=1)) <= 0.05
    ), "‖J + I‖∞ exceeds 0.05."


def test_fixed_point_map_jacobian() -> None:
    """Test the scalar Jacobian (1 - ηu)⁻¹(1 + ηu)."""
    spec = AnalysisSpec(
        activation=ActivationKinds.IDENTITY,
        hidden_dim=1,
        input_dim=1,
        u_init=UInit.IDENTITY,
        projection=False,
    )
    cell = analysis_params(spec, Rng(44))

    jacobian = fixed_point_map_jacobian(
        cell, np.zeros(1), np.zeros(1), np.ones(1), 0.1
    )

    assert jacobian[0, 0] == pytest.approx(
        1.05 / 0.95
    ), "The map Jacobian is wrong."


def test_ernn_gradient_norms() -> None:
    """Test that ERNN gradients neither vanish nor explode."""
    rng = Rng(45)
    cell = analysis_params(PROFILE_SPEC, rng)
    sequence = rng.gaussian_matrix(128, PROFILE_SPEC.input_dim)

    norms = bptt_norm_profile(cell, sequence)

    assert len(norms) == 127, "Not every earlier step was measured."
    assert all(
        0.5 <= norm <= 2.0 for norm in norms
    ), "A gradient norm left [0.5, 2]."


def test_vanilla_gradients_vanish() -> None:
    """Test that contractive vanilla gradients decay along the sequence."""
    spec = dataclasses.replace(PROFILE_SPEC, kind=CellKinds.VANILLA)
    rng = Rng(46)
    cell = analysis_params(spec, rng)
    sequence = rng.gaussian_matrix(128, spec.input_dim)

    norms = bptt_norm_profile(cell, sequence)

    assert norms[0] <= 1e-2, "The oldest gradient did not vanish."
    assert norms[-1] <= 0.5, "A single factor exceeds ‖U‖₂."


def test_two_step_profile() -> None:
    """Test that two steps measure the single linear factor U."""
    spec = AnalysisSpec(
        kind=CellKinds.VANILLA,
        activation=ActivationKinds.IDENTITY,
        hidden_dim=3,
        input_dim=1,
    )
    cell = analysis_params(spec, Rng(47))

    norms = bptt_norm_profile(cell, np.ones((2, 1)))

    assert norms == pytest.approx([0.5]), "The norm is not ‖U‖₂."


def test_invalid_profiles() -> None:
    """Test the rejection of short sequences and iteration counts."""
    cell = analysis_params(PROFILE_SPEC, Rng(48))

    with pytest.raises(RejectedInputException) as execution:
        bptt_norm_profile(cell, np.ones((1, 2)))
    assert execution.value, "A single step was profiled."

    with pytest.raises(RejectedInputException) as execution:
        bptt_norm_profile(cell, np.ones((3, 2)), iterations=6)
    assert execution.value, "Too many iterations were accepted."
