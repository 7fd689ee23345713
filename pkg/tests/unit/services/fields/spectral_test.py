"""Unit tests for spectral differential operators."""

import math

import numpy as np
import pytest

from paulilab.services.fields import (
    Grid,
    ScalarField,
    VectorField,
    coulomb_project,
    curl,
    divergence,
    grad_energy,
    gradient,
    laplacian,
)


def _sin_x1(grid: Grid) -> VectorField:
    values = np.zeros((3, *grid.dims))
    values[0] = np.sin(grid.coordinates[0])
    return VectorField(grid, values)


class TestGradEnergy:
    """Tests for the field energy int |dA|^2."""

    def test_zero_field(self, torus_grid: Grid):
        """Test A = 0 has no field energy."""
        assert grad_energy(VectorField.zeros(torus_grid)) == 0.0

    def test_sine_field(self, torus_grid: Grid):
        """Test A = (sin x1, 0, 0) gives int cos^2 x1 = (2 pi)^3 / 2."""
        assert grad_energy(_sin_x1(torus_grid)) == pytest.approx((2 * math.pi) ** 3 / 2, rel=1e-10)

    def test_constant_field(self, torus_grid: Grid):
        """Test a constant A has no field energy."""
        values = np.ones((3, *torus_grid.dims)) * np.array([1.0, -2.0, 0.5])[:, None, None, None]

        assert grad_energy(VectorField(torus_grid, values)) == pytest.approx(0.0, abs=1e-20)


class TestVectorIdentities:
    """Tests for curl, divergence, gradient and Laplacian."""

    def test_curl_of_gradient_vanishes(self, torus_grid: Grid):
        """Test curl grad chi = 0 for a smooth resolved chi."""
        x, y, z = torus_grid.coordinates
        chi = ScalarField(torus_grid, np.sin(x) * np.cos(2 * y) + np.cos(z))

        assert np.abs(curl(gradient(chi)).values).max() < 1e-12

    def test_divergence_of_curl_vanishes(self, torus_grid: Grid):
        """Test div curl A = 0."""
        x, y, z = torus_grid.coordinates
        A = VectorField(torus_grid, np.stack([np.sin(y), np.cos(z) * np.sin(x), np.sin(x + y)]))

        assert np.abs(divergence(curl(A)).values).max() < 1e-12

    def test_laplacian_of_sine(self, torus_grid: Grid):
        """Test sin x1 is an eigenfunction of the Laplacian with eigenvalue -1."""
        s = ScalarField(torus_grid, np.sin(torus_grid.coordinates[0]))

        assert laplacian(s).values == pytest.approx(-s.values, abs=1e-12)

    def test_coulomb_projection_is_divergence_free(self, torus_grid: Grid):
        """Test the Coulomb representative has zero divergence and mean."""
        x, y, _ = torus_grid.coordinates
        A = VectorField(torus_grid, np.stack([np.sin(x), np.cos(y), np.ones_like(x)]))

        projected = coulomb_project(A)

        assert np.abs(divergence(projected).values).max() < 1e-12
        assert np.abs(projected.values.mean(axis=(1, 2, 3))).max() < 1e-12
