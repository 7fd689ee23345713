"""Fourier-spectral differential operators on the torus.

First derivatives use the Nyquist-zeroed multipliers of the grid; the
Laplacian uses the full symbol ``-|k|^2``. With these choices curl(grad) and
div(curl) vanish identically and Laplacian and its inverse are exact inverses
on the zero-mean subspace.
"""

import numpy as np
import scipy.fft

from paulilab.models.constants import SIGNIFICANT_MODE_TOLERANCE
from paulilab.services.fields.fields import ScalarField, VectorField
from paulilab.services.fields.grid import Grid

SPATIAL_AXES = (-3, -2, -1)


def fft3(values: np.ndarray) -> np.ndarray:
    """Forward FFT over the three spatial axes."""
    return scipy.fft.fftn(values, axes=SPATIAL_AXES, workers=-1)


def ifft3(coefficients: np.ndarray) -> np.ndarray:
    """Inverse FFT over the three spatial axes."""
    return scipy.fft.ifftn(coefficients, axes=SPATIAL_AXES, workers=-1)


def partial(grid: Grid, values: np.ndarray, axis: int) -> np.ndarray:
    """Real spectral derivative of real site values along ``axis``."""
    k = grid.derivative_wavenumbers[axis]
    return ifft3(1j * k * fft3(values)).real


def gradient_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Gradient of real site values, shape (3, *dims)."""
    coefficients = fft3(values)
    return np.stack(
        [ifft3(1j * k * coefficients).real for k in grid.derivative_wavenumbers]
    )


def jacobian_values(A: VectorField) -> np.ndarray:
    """Matrix field ``d_i A_j``, shape (3, 3, *dims) indexed [i, j]."""
    coefficients = fft3(A.values)
    return np.stack(
        [ifft3(1j * k * coefficients).real for k in A.grid.derivative_wavenumbers]
    )


def gradient(field: ScalarField) -> VectorField:
    """Spectral gradient."""
    return VectorField(field.grid, gradient_values(field.grid, field.values))


def divergence(A: VectorField) -> ScalarField:
    """Spectral divergence."""
    coefficients = fft3(A.values)
    total = sum(1j * k * coefficients[j] for j, k in enumerate(A.grid.derivative_wavenumbers))
    return ScalarField(A.grid, ifft3(total).real)


def curl(A: VectorField) -> VectorField:
    """Spectral curl ``B = curl A``."""
    c = fft3(A.values)
    k1, k2, k3 = A.grid.derivative_wavenumbers
    b_hat = np.stack(
        [
            1j * (k2 * c[2] - k3 * c[1]),
            1j * (k3 * c[0] - k1 * c[2]),
            1j * (k1 * c[1] - k2 * c[0]),
        ]
    )
    return VectorField(A.grid, ifft3(b_hat).real)


def laplacian_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Spectral Laplacian over the trailing three axes."""
    return ifft3(-grid.k_squared * fft3(values)).real


def laplacian[F: (ScalarField, VectorField)](field: F) -> F:
    """Spectral Laplacian of a scalar or (componentwise) vector field."""
    return type(field)(field.grid, laplacian_values(field.grid, field.values))


def inverse_laplacian_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Zero-mean solution ``u`` of ``Laplacian u = f - mean(f)`` by FFT."""
    k2 = grid.k_squared
    safe = np.where(k2 == 0.0, 1.0, k2)
    coefficients = fft3(values)
    solution = np.where(k2 == 0.0, 0.0, -coefficients / safe)
    return ifft3(solution).real


def coulomb_project_values(grid: Grid, values: np.ndarray) -> np.ndarray:
    """Zero-mean, divergence-free part of a vector field (Helmholtz projection)."""
    c = fft3(values)
    k = grid.derivative_wavenumbers
    kk = k[0] ** 2 + k[1] ** 2 + k[2] ** 2
    safe = np.where(kk == 0.0, 1.0, kk)
    k_dot_c = (k[0] * c[0] + k[1] * c[1] + k[2] * c[2]) / safe
    projected = np.stack([c[j] - k[j] * k_dot_c for j in range(3)])
    # corners of the Nyquist cube have no derivative symbol at all
    projected[:, kk == 0.0] = 0.0
    return ifft3(projected).real


def coulomb_project(A: VectorField) -> VectorField:
    """Coulomb gauge representative of ``A``: zero mean, zero divergence."""
    return VectorField(A.grid, coulomb_project_values(A.grid, A.values))


def dealias_values(grid: Grid, values: np.ndarray, fraction: float = 2.0 / 3.0) -> np.ndarray:
    """Remove Fourier modes above ``fraction`` of the Nyquist index on any axis."""
    limits = np.array([fraction * (n // 2) for n in grid.dims])
    keep = np.ones(grid.dims, dtype=bool)
    for axis, n in enumerate(grid.dims):
        modes = np.abs(np.fft.fftfreq(n, d=1.0 / n))
        shape = [1, 1, 1]
        shape[axis] = n
        keep &= (modes <= limits[axis]).reshape(shape)
    return ifft3(fft3(values) * keep).real


def max_significant_mode(grid: Grid, values: np.ndarray) -> int:
    """Largest per-axis integer mode carrying non-negligible amplitude.

    Leading axes (components) are reduced by maximum.
    """
    coefficients = np.abs(fft3(values))
    if coefficients.ndim > 3:
        coefficients = coefficients.reshape(-1, *grid.dims).max(axis=0)
    peak = coefficients.max()
    if peak == 0.0:
        return 0
    significant = coefficients > SIGNIFICANT_MODE_TOLERANCE * peak
    return int(grid.mode_index[significant].max())


def grad_energy(A: VectorField) -> float:
    """Field energy ``int |dA|^2 = sum_ij int |d_i A_j|^2`` (spectral)."""
    return A.grid.integrate(jacobian_values(A) ** 2)
