"""Unit tests for the self-generated field minimizer."""

from dataclasses import replace

import numpy as np
import pytest

from paulilab.models.constants import LINE_SEARCH_TOLERANCE
from paulilab.models.enums import SolverKind
from paulilab.models.settings import MinimizerOptions, SolverOptions
from paulilab.services.fields import Grid, ScalarField, VectorField
from paulilab.services.fields.spectral import coulomb_project, fft3
from paulilab.services.selfgen import EnergyEvaluation, energy, initial_field, minimize
from paulilab.services.selfgen.minimizer import comparable
from paulilab.services.spectra import SpectralResult

DENSE = SolverOptions(kind=SolverKind.DENSE)


def _gauge_defects(A: VectorField) -> tuple[float, float]:
    coefficients = fft3(A.values)
    k = A.grid.derivative_wavenumbers
    divergence = sum(k[i] * coefficients[i] for i in range(3))
    return float(np.abs(divergence).max()), float(np.abs(coefficients[:, 0, 0, 0]).max())


class TestInitialField:
    """Tests for initial_field."""

    def test_zero_amplitude(self, deep_well: ScalarField):
        """Test amplitude 0 gives A = 0."""
        assert initial_field(deep_well, 0.0, seed=1).is_zero()

    def test_amplitude_and_gauge(self, deep_well: ScalarField):
        """Test the peak equals the amplitude and the field is divergence-free with zero mean."""
        A = initial_field(deep_well, 1e-2, seed=4)
        coefficients = fft3(A.values)
        k = A.grid.derivative_wavenumbers
        divergence = sum(k[i] * coefficients[i] for i in range(3))

        assert abs(A.values).max() == pytest.approx(1e-2)
        assert abs(divergence).max() < 1e-10
        assert abs(coefficients[:, 0, 0, 0]).max() < 1e-10

    def test_seeded(self, deep_well: ScalarField):
        """Test the same seed gives the same field."""
        first = initial_field(deep_well, 1e-3, seed=9)
        second = initial_field(deep_well, 1e-3, seed=9)

        assert (first.values == second.values).all()


class TestMinimize:
    """Tests for minimize."""

    def test_energy_never_above_zero_field(self, small_grid: Grid, deep_well: ScalarField):
        """Test E(A*) <= E(0)."""
        options = MinimizerOptions(max_iterations=6, tolerance=1e-2, initial_amplitude=1e-2)

        state = minimize(deep_well, 1.0, 0.5, options, DENSE, seed=3)

        e0 = energy(VectorField.zeros(small_grid), deep_well, 1.0, 0.5, DENSE)
        assert state.energy <= e0 + 1e-10
        assert state.energy == pytest.approx(state.trace + state.field_energy / (0.5 * 1.0))

    def test_no_negative_spectrum_returns_zero_field(self, small_grid: Grid):
        """Test V <= 0 stops at A = 0, converged, without iterating."""
        V = ScalarField.constant(small_grid, -1.0)

        state = minimize(V, 1.0, 0.5, solver=DENSE)

        assert state.converged
        assert state.A.is_zero()
        assert state.energy == 0.0
        assert state.iteration == 0

    def test_history_and_checkpoint(self, deep_well: ScalarField):
        """Test the checkpoint mirrors the state and carries the history."""
        seen = []
        options = MinimizerOptions(max_iterations=3, tolerance=1e-12)

        state = minimize(deep_well, 1.0, 0.5, options, DENSE, seed=1, on_iteration=seen.append)
        checkpoint = state.checkpoint()

        assert checkpoint.energy == state.energy
        assert checkpoint.eigenvalue_count == state.spectrum.count
        assert len(checkpoint.history) >= 1
        assert all(s.kappa == 0.5 for s in seen)

    def test_runs_to_convergence(self, small_grid: Grid, deep_well: ScalarField):
        """Test the fixed point meets the residual tolerance without leaving the gauge or raising E."""
        h, kappa = 0.8, 0.5
        options = MinimizerOptions(max_iterations=150, tolerance=1e-3)

        state = minimize(deep_well, h, kappa, options, DENSE, seed=5)

        e0 = energy(VectorField.zeros(small_grid), deep_well, h, kappa, DENSE)
        divergence, mean = _gauge_defects(state.A)
        energies = [entry.energy for entry in state.history]
        assert state.converged
        assert state.el_residual <= 1e-3
        assert state.energy <= e0 + 1e-10
        assert divergence <= 1e-10
        assert mean <= 1e-10
        assert all(b <= a + LINE_SEARCH_TOLERANCE for a, b in zip(energies, energies[1:]))

    def test_field_scales_with_root_kappa(self, small_grid: Grid, deep_well: ScalarField):
        """Test ||dA*|| / (kappa h)^(1/2) stays under one kappa-independent constant.

        E(A*) <= E(0) and Tr^- >= -count max V give
        (kappa h^2)^-1 ||dA*||^2 <= E(0) + count max V.
        """
        h = 0.8
        options = MinimizerOptions(max_iterations=20, tolerance=1e-3, initial_amplitude=1e-2)
        e0 = energy(VectorField.zeros(small_grid), deep_well, h, 1.0, DENSE)
        peak = float(deep_well.values.max())

        for kappa in (0.125, 0.25, 0.5, 1.0):
            state = minimize(deep_well, h, kappa, options, DENSE, seed=2)
            bound = np.sqrt(h * (e0 + state.spectrum.count * peak))
            ratio = np.sqrt(state.field_energy) / np.sqrt(kappa * h)

            assert state.energy <= e0 + 1e-10
            assert ratio <= bound

    def test_initial_field_is_projected(self, small_grid: Grid, deep_well: ScalarField, random_field):
        """Test a starting field with divergence enters the iteration in Coulomb gauge."""
        initial = random_field(small_grid, amplitude=1e-2, seed=3)
        assert _gauge_defects(initial)[0] > 1e-6
        options = MinimizerOptions(max_iterations=1, tolerance=1e6)

        state = minimize(deep_well, 1.0, 0.5, options, DENSE, seed=3, initial=initial)

        divergence, mean = _gauge_defects(state.A)
        assert divergence <= 1e-10
        assert mean <= 1e-10
        if not state.restarted:
            assert state.A.values == pytest.approx(coulomb_project(initial).values, abs=1e-12)


class TestComparable:
    """Tests for the line-search objective pair."""

    @pytest.fixture
    def clear(self, small_grid: Grid) -> SpectralResult:
        """Empty spectrum with nothing near zero."""
        return SpectralResult.empty(small_grid, 1.0, 0.0, SolverKind.DENSE)

    @staticmethod
    def _evaluation(grid: Grid, spectrum: SpectralResult, energy_: float, smoothed=None) -> EnergyEvaluation:
        return EnergyEvaluation(
            A=VectorField.zeros(grid),
            spectrum=spectrum,
            trace=energy_,
            field_energy=0.0,
            energy=energy_,
            smoothed_energy=smoothed,
        )

    @staticmethod
    def _smooth(evaluation: EnergyEvaluation) -> EnergyEvaluation:
        if evaluation.smoothed_energy is not None:
            return evaluation
        return replace(evaluation, smoothed_energy=evaluation.energy - 4.2)

    def test_one_ambiguous_side_smooths_both(self, small_grid: Grid, clear: SpectralResult):
        """Test an ambiguous trial forces the smoothed value on the unambiguous current too."""
        ambiguous = replace(clear, ambiguous_values=np.array([1e-8]))
        trial = self._evaluation(small_grid, ambiguous, -0.5, smoothed=-5.0)
        current = self._evaluation(small_grid, clear, -1.0)

        new, old, trial_out, current_out = comparable(trial, current, False, self._smooth)

        assert new == -5.0
        assert old == pytest.approx(-5.2)
        assert current_out.smoothed_energy == pytest.approx(-5.2)
        assert trial_out is trial
        assert new > old + LINE_SEARCH_TOLERANCE

    def test_ambiguous_current_smooths_trial(self, small_grid: Grid, clear: SpectralResult):
        """Test ambiguity on the current side alone also switches both to the smoothed value."""
        ambiguous = replace(clear, ambiguous_values=np.array([1e-8]))
        trial = self._evaluation(small_grid, clear, -3.0)
        current = self._evaluation(small_grid, ambiguous, -1.0, smoothed=-6.0)

        new, old, _, _ = comparable(trial, current, False, self._smooth)

        assert new == pytest.approx(-7.2)
        assert old == -6.0

    def test_unambiguous_compares_energy(self, small_grid: Grid, clear: SpectralResult):
        """Test without ambiguity or regularization E is compared and nothing is smoothed."""
        trial = self._evaluation(small_grid, clear, -2.0)
        current = self._evaluation(small_grid, clear, -1.0)

        new, old, trial_out, current_out = comparable(trial, current, False, self._smooth)

        assert (new, old) == (-2.0, -1.0)
        assert trial_out.smoothed_energy is None
        assert current_out.smoothed_energy is None

    def test_regularize_compares_smoothed(self, small_grid: Grid, clear: SpectralResult):
        """Test regularization uses the smoothed functional on both sides."""
        trial = self._evaluation(small_grid, clear, -2.0)
        current = self._evaluation(small_grid, clear, -1.0)

        new, old, _, _ = comparable(trial, current, True, self._smooth)

        assert new == pytest.approx(-6.2)
        assert old == pytest.approx(-5.2)
