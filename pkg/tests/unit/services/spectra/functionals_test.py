"""Unit tests for trace functionals and spectral densities."""

import numpy as np
import pytest

from paulilab.exceptions import IncompleteSpectrumError
from paulilab.models.enums import SolverKind
from paulilab.services.fields import Grid, ScalarField, VectorField
from paulilab.services.pauli import assemble
from paulilab.services.spectra import (
    SmoothingSpec,
    SpectralResult,
    density_e1,
    diag_density,
    e1_diagonal,
    negative_spectrum,
    smoothed_trace,
    trace_minus,
    trace_minus_bounds,
)


def _synthetic(grid: Grid, eigenvalues, threshold: float = 10.0, usable: bool = True) -> SpectralResult:
    values = np.asarray(eigenvalues, dtype=float)
    vectors = np.eye(2 * grid.n_sites, values.size, dtype=np.complex128)
    return SpectralResult(
        grid=grid,
        h=1.0,
        threshold=threshold,
        eigenvalues=values,
        vectors=vectors,
        residuals=np.zeros(values.size),
        solver=SolverKind.DENSE,
        usable=usable,
    )


@pytest.fixture
def well_spectrum(small_grid: Grid, deep_well: ScalarField) -> SpectralResult:
    """Dense negative spectrum of the deep well at h = 0.8."""
    H = assemble(small_grid, VectorField.zeros(small_grid), deep_well, 0.8)
    return negative_spectrum(H, 0.0, SolverKind.DENSE)


class TestTraceMinus:
    """Tests for trace_minus and its threshold variants."""

    def test_empty(self, tiny_grid: Grid):
        """Test an empty spectrum sums to 0."""
        assert trace_minus(_synthetic(tiny_grid, [])) == 0.0

    def test_sums_negative_part(self, tiny_grid: Grid):
        """Test {-2, -1, 3} gives -3."""
        assert trace_minus(_synthetic(tiny_grid, [-2.0, -1.0, 3.0])) == -3.0

    def test_unusable_spectrum_is_refused(self, tiny_grid: Grid):
        """Test a spectrum flagged unusable cannot feed a trace."""
        with pytest.raises(IncompleteSpectrumError):
            trace_minus(_synthetic(tiny_grid, [-1.0], usable=False))

    def test_spectrum_must_reach_zero(self, tiny_grid: Grid):
        """Test a spectrum computed below -1 cannot give Tr^-."""
        with pytest.raises(IncompleteSpectrumError):
            trace_minus(_synthetic(tiny_grid, [-2.0], threshold=-1.0))

    def test_lattice_sum(self, tiny_grid: Grid):
        """Test the constant-potential trace equals the lattice enumeration."""
        h, v0 = 1.0, 3.0
        H = assemble(tiny_grid, VectorField.zeros(tiny_grid), ScalarField.constant(tiny_grid, v0), h)
        k1, k2, k3 = tiny_grid.derivative_wavenumbers
        lattice = (h**2 * (k1**2 + k2**2 + k3**2) - v0).ravel()

        S = negative_spectrum(H, 0.0, SolverKind.DENSE)

        assert trace_minus(S) == pytest.approx(2 * lattice[lattice < 0].sum())

    def test_bounds_without_ambiguity(self, well_spectrum: SpectralResult):
        """Test inclusion and exclusion agree when no eigenvalue sits near 0."""
        bounds = trace_minus_bounds(well_spectrum)

        if not bounds.ambiguous:
            assert bounds.inclusion == bounds.exclusion
        assert bounds.exclusion == trace_minus(well_spectrum)


class TestDensities:
    """Tests for e_1(x, x, 0) and e(x, x, tau)."""

    def test_unit_weight_gives_trace(self, small_grid: Grid, well_spectrum: SpectralResult):
        """Test int e_1 psi^2 with psi = 1 is Tr^-."""
        ones = ScalarField.constant(small_grid, 1.0)

        assert density_e1(well_spectrum, ones) == pytest.approx(trace_minus(well_spectrum))

    def test_zero_weight(self, small_grid: Grid, well_spectrum: SpectralResult):
        """Test psi = 0 gives 0."""
        assert density_e1(well_spectrum, ScalarField.constant(small_grid, 0.0)) == 0.0

    def test_matches_dense_kernel(self, small_grid: Grid, deep_well: ScalarField):
        """Test the weighted sum against the diagonal of the dense spectral kernel."""
        H = assemble(small_grid, VectorField.zeros(small_grid), deep_well, 0.9)
        S = negative_spectrum(H, 0.0, SolverKind.DENSE)
        rng = np.random.default_rng(5)
        psi2 = ScalarField(small_grid, rng.uniform(0.0, 1.0, small_grid.dims))

        eigenvalues, vectors = np.linalg.eigh(H.dense_matrix())
        negative = eigenvalues < 0
        weights = np.abs(vectors[:, negative]) ** 2
        site = weights.reshape(2, small_grid.n_sites, -1).sum(axis=0)
        expected = float(np.sum(site * eigenvalues[negative], axis=1) @ psi2.values.ravel())

        assert density_e1(S, psi2) == pytest.approx(expected, rel=1e-9)
        assert e1_diagonal(S).integrate() == pytest.approx(trace_minus(S))

    def test_diag_density_integrates_to_count(self, well_spectrum: SpectralResult):
        """Test int e(x, x, tau) = number of eigenvalues <= tau."""
        density = diag_density(well_spectrum, 0.0)

        assert density.integrate() == pytest.approx(well_spectrum.count)

    def test_diag_density_empty(self, tiny_grid: Grid):
        """Test no eigenvalues below tau gives the zero field."""
        density = diag_density(_synthetic(tiny_grid, [1.0, 2.0]), 0.0)

        assert not np.any(density.values)


class TestSmoothedTrace:
    """Tests for the energy-regularized trace."""

    def test_deep_eigenvalues_are_unchanged(self, tiny_grid: Grid):
        """Test eigenvalues at or below -L contribute themselves."""
        S = _synthetic(tiny_grid, [-3.0, -2.0, -1.0])

        assert smoothed_trace(S, SmoothingSpec(scale=0.5)) == pytest.approx(trace_minus(S))

    def test_zero_eigenvalue_contributes_minus_scale(self, tiny_grid: Grid):
        """Test a single eigenvalue 0 contributes -L."""
        S = _synthetic(tiny_grid, [0.0])

        assert smoothed_trace(S, SmoothingSpec(scale=0.25)) == pytest.approx(-0.25)

    def test_never_above_trace(self, tiny_grid: Grid):
        """Test the smoothed trace is at most Tr^- for a random spectrum."""
        rng = np.random.default_rng(11)
        S = _synthetic(tiny_grid, np.sort(rng.uniform(-2.0, 2.0, 40)))

        assert smoothed_trace(S, SmoothingSpec(scale=0.3)) <= trace_minus(S)

    def test_scale_must_be_positive(self):
        """Test a nonpositive window is refused."""
        with pytest.raises(ValueError):
            SmoothingSpec(scale=0.0)
