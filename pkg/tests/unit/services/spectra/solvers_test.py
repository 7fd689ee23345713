"""Unit tests for the dense and iterative negative-spectrum solvers."""

import numpy as np
import pytest

from paulilab.models.enums import SolverKind
from paulilab.models.settings import SolverOptions
from paulilab.services.fields import Grid, ScalarField, VectorField, sample_potential
from paulilab.services.pauli import assemble
from paulilab.services.spectra import negative_spectrum, trace_minus
from paulilab.services.spectra.solvers import resolve_solver


class TestResolveSolver:
    """Tests for automatic solver selection."""

    def test_auto_picks_dense_for_small_operators(self):
        """Test dimensions up to the dense limit are solved densely."""
        options = SolverOptions(dense_limit=500)

        assert resolve_solver(SolverKind.AUTO, 432, options) == SolverKind.DENSE
        assert resolve_solver(SolverKind.AUTO, 1024, options) == SolverKind.ITERATIVE

    def test_explicit_choice_is_kept(self):
        """Test an explicit kind overrides the size rule."""
        assert resolve_solver(SolverKind.ITERATIVE, 10, SolverOptions()) == SolverKind.ITERATIVE


class TestNegativeSpectrum:
    """Tests for negative_spectrum."""

    @pytest.mark.parametrize("kind", [SolverKind.DENSE, SolverKind.ITERATIVE])
    def test_nonpositive_potential_has_no_negative_spectrum(self, small_grid: Grid, kind):
        """Test V <= 0 with A = 0 gives an empty list."""
        H = assemble(small_grid, VectorField.zeros(small_grid), ScalarField.constant(small_grid, -1.0), 1.0)

        S = negative_spectrum(H, 0.0, kind)

        assert S.count == 0
        assert trace_minus(S) == 0.0

    def test_iterative_matches_dense(self, small_grid: Grid, deep_well: ScalarField):
        """Test the iterative eigenvalue list equals the dense one to 1e-8."""
        H = assemble(small_grid, VectorField.zeros(small_grid), deep_well, 0.8)

        dense = negative_spectrum(H, 0.0, SolverKind.DENSE)
        iterative = negative_spectrum(H, 0.0, SolverKind.ITERATIVE, SolverOptions(block_size=4))

        assert dense.count > 0
        assert iterative.usable
        assert iterative.certified
        assert iterative.eigenvalues == pytest.approx(dense.eigenvalues, abs=1e-8)

    def test_iterative_with_field_matches_dense(self, small_grid: Grid, deep_well: ScalarField, random_field):
        """Test agreement persists with a nonzero vector potential."""
        H = assemble(small_grid, random_field(small_grid, amplitude=0.2), deep_well, 0.9)

        dense = negative_spectrum(H, 0.0, SolverKind.DENSE)
        iterative = negative_spectrum(H, 0.0, SolverKind.ITERATIVE)

        assert iterative.eigenvalues == pytest.approx(dense.eigenvalues, abs=1e-8)

    def test_constant_potential_lattice(self, tiny_grid: Grid):
        """Test eigenvalues below tau are the lattice values h^2 |xi|^2 - V0, each twice."""
        h, v0, tau = 1.0, 3.0, 0.5
        H = assemble(tiny_grid, VectorField.zeros(tiny_grid), ScalarField.constant(tiny_grid, v0), h)
        k1, k2, k3 = tiny_grid.derivative_wavenumbers
        lattice = (h**2 * (k1**2 + k2**2 + k3**2) - v0).ravel()
        lattice = lattice[lattice <= tau]
        expected = np.sort(np.concatenate([lattice, lattice]))

        S = negative_spectrum(H, tau, SolverKind.DENSE)

        assert S.eigenvalues == pytest.approx(expected, abs=1e-10)

    def test_eigenvectors_are_orthonormal(self, small_grid: Grid, deep_well: ScalarField):
        """Test the returned vectors form an orthonormal set with small residuals."""
        H = assemble(small_grid, VectorField.zeros(small_grid), deep_well, 0.8)

        S = negative_spectrum(H, 0.0, SolverKind.DENSE)

        assert S.gram_defect() < 1e-10
        assert S.residuals.max() < 1e-8
        assert np.all(np.diff(S.eigenvalues) >= 0)


class TestOracleAgreement:
    """Seeded comparison of the iterative solver with dense diagonalization."""

    @pytest.mark.parametrize("seed", range(10))
    def test_random_instance(self, small_grid: Grid, random_well, random_field, seed: int):
        """Test eigenvalue lists agree to 1e-8 on a random well and field."""
        rng = np.random.default_rng(100 + seed)
        V = random_well(small_grid, seed)
        A = random_field(small_grid, amplitude=rng.uniform(0.0, 0.3), seed=seed)
        h = rng.uniform(0.75, 0.9)
        H = assemble(small_grid, A, V, h)

        dense = negative_spectrum(H, 0.0, SolverKind.DENSE)
        iterative = negative_spectrum(H, 0.0, SolverKind.ITERATIVE, SolverOptions(block_size=4), seed=seed)

        assert dense.count > 0
        assert iterative.certified
        assert iterative.eigenvalues == pytest.approx(dense.eigenvalues, abs=1e-8)


class TestSpinDoubling:
    """Tests for the spin degeneracy of H at A = 0."""

    def test_eigenvalues_come_in_pairs(self, small_grid: Grid, deep_well: ScalarField):
        """Test the negative spectrum has even count and equal consecutive pairs."""
        H = assemble(small_grid, VectorField.zeros(small_grid), deep_well, 0.8)

        S = negative_spectrum(H, 0.0, SolverKind.DENSE)

        assert S.count > 0
        assert S.count % 2 == 0
        assert S.eigenvalues[0::2] == pytest.approx(S.eigenvalues[1::2], abs=1e-10)

    def test_matrix_is_two_equal_blocks(self, tiny_grid: Grid):
        """Test the spin-major matrix is block diagonal with identical scalar blocks."""
        V = sample_potential("gaussian_well", {"amplitude": 12.0}, tiny_grid)
        n = tiny_grid.n_sites

        matrix = assemble(tiny_grid, VectorField.zeros(tiny_grid), V, 1.0).dense_matrix()

        assert np.abs(matrix[:n, n:]).max() < 1e-12
        assert np.abs(matrix[n:, :n]).max() < 1e-12
        assert matrix[:n, :n] == pytest.approx(matrix[n:, n:], abs=1e-12)


class TestVariationalMonotonicity:
    """Tests that raising V lowers Tr^-."""

    @pytest.mark.parametrize("seed", range(3))
    def test_larger_potential_lowers_trace(self, small_grid: Grid, deep_well: ScalarField, random_field, seed: int):
        """Test V' >= V pointwise gives Tr^- H_{A,V'} <= Tr^- H_{A,V}."""
        rng = np.random.default_rng(seed)
        raised = ScalarField(small_grid, deep_well.values + rng.uniform(0.0, 1.0, small_grid.dims))
        A = random_field(small_grid, amplitude=0.1, seed=seed)

        lower = trace_minus(negative_spectrum(assemble(small_grid, A, deep_well, 0.9), 0.0, SolverKind.DENSE))
        higher = trace_minus(negative_spectrum(assemble(small_grid, A, raised, 0.9), 0.0, SolverKind.DENSE))

        assert lower < 0
        assert higher <= lower + 1e-10
