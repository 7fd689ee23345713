"""The discrete Pauli operator H = ((hD - A).sigma)^2 - V on the torus.

Multiplication by A and V is pointwise in space and D = -i d is applied in
frequency. The operator acts on flat complex vectors in the layout
(spin, n1, n2, n3), unit-normalized in the plain Euclidean norm; physical L2
normalization differs by the square root of the cell volume.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from paulilab.exceptions import AliasingError, OperatorError, ResolutionError
from paulilab.models.constants import HERMITICITY_TOLERANCE, PAULI_CONSISTENCY_TOLERANCE
from paulilab.services.fields.fields import ScalarField, SpinorField, VectorField
from paulilab.services.fields.grid import Grid
from paulilab.services.fields.spectral import (
    curl,
    fft3,
    gradient_values,
    ifft3,
    max_significant_mode,
)
from paulilab.services.pauli.matrices import apply_sigma, sigma_dot

logger = logging.getLogger(__name__)

DENSE_BLOCK = 256


class PauliOperator:
    """Matrix-free H_{A,V} with semiclassical parameter h.

    Build with :func:`assemble`, which validates the inputs.
    """

    def __init__(self, grid: Grid, A: VectorField, V: ScalarField, h: float):
        self.grid = grid
        self.A = A
        self.V = V
        self.h = float(h)
        self._hk = tuple(self.h * k for k in grid.derivative_wavenumbers)

    @property
    def dimension(self) -> int:
        """Length of flat spinor vectors."""
        return 2 * self.grid.n_sites

    @cached_property
    def max_potential(self) -> float:
        """max V over the grid."""
        return float(self.V.values.max())

    @property
    def lower_bound(self) -> float:
        """-max V; no eigenvalue lies below since the squared part is nonnegative."""
        return -self.max_potential

    def covariant_all(self, u: np.ndarray) -> list[np.ndarray]:
        """``[(hD_k - A_k) u for k = 1, 2, 3]`` sharing one forward FFT."""
        coefficients = fft3(u)
        pairs = zip(self._hk, self.A.values, strict=True)
        return [ifft3(hk * coefficients) - a * u for hk, a in pairs]

    def sigma_covariant(self, u: np.ndarray) -> np.ndarray:
        """``((hD - A).sigma) u``."""
        return sigma_dot(self.covariant_all(u))

    def apply(self, u: np.ndarray) -> np.ndarray:
        """H u for spinor arrays with optional leading batch axes."""
        return self.sigma_covariant(self.sigma_covariant(u)) - self.V.values * u

    def apply_scalar_form(self, u: np.ndarray) -> np.ndarray:
        """``(hD - A)^2 u - h (sigma.B) u - V u`` with B = curl A.

        Agrees with :meth:`apply` whenever the products A u stay below the
        Nyquist index; used as a consistency check.
        """
        b = self.magnetic_field.values
        kinetic = 0
        for w, hk, a in zip(self.covariant_all(u), self._hk, self.A.values, strict=True):
            kinetic = kinetic + ifft3(hk * fft3(w)) - a * w
        zeeman = sum(b[j] * apply_sigma(j, u) for j in range(3))
        return kinetic - self.h * zeeman - self.V.values * u

    @cached_property
    def magnetic_field(self) -> VectorField:
        """B = curl A."""
        return curl(self.A)

    def _as_spinors(self, vectors: np.ndarray) -> tuple[np.ndarray, bool]:
        vectors = np.asarray(vectors)
        if vectors.ndim == 1:
            return vectors.reshape(2, *self.grid.dims), False
        return vectors.T.reshape(vectors.shape[1], 2, *self.grid.dims), True

    def apply_flat(self, vectors: np.ndarray) -> np.ndarray:
        """Apply to a flat vector or to the columns of a (dimension, k) matrix."""
        spinors, batched = self._as_spinors(vectors)
        out = self.apply(spinors)
        if not batched:
            return out.reshape(-1)
        return out.reshape(out.shape[0], -1).T

    def apply_field(self, u: SpinorField) -> SpinorField:
        """H applied to a spinor field."""
        self.grid.require_same(u.grid)
        return SpinorField(self.grid, self.apply(np.asarray(u.values)))

    def dense_matrix(self) -> np.ndarray:
        """Explicit Hermitian matrix, built column block by column block."""
        n = self.dimension
        matrix = np.empty((n, n), dtype=np.complex128)
        for start in range(0, n, DENSE_BLOCK):
            stop = min(start + DENSE_BLOCK, n)
            block = np.zeros((n, stop - start), dtype=np.complex128)
            block[np.arange(start, stop), np.arange(stop - start)] = 1.0
            matrix[:, start:stop] = self.apply_flat(block)
        return 0.5 * (matrix + matrix.conj().T)

    def hermiticity_defect(self, rng: np.random.Generator) -> float:
        """Relative |<Hu, v> - <u, Hv>| on random spinors."""
        shape = (self.dimension,)
        u = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        v = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        hu, hv = self.apply_flat(u), self.apply_flat(v)
        scale = max(np.linalg.norm(hu) * np.linalg.norm(v), np.linalg.norm(u) * np.linalg.norm(hv))
        return float(abs(np.vdot(hu, v) - np.vdot(u, hv)) / max(scale, 1e-300))

    def consistency_defect(self, rng: np.random.Generator) -> float | None:
        """Relative difference between the squared-sigma and scalar-plus-Zeeman forms.

        Tested on a random spinor band-limited so that A u is resolved; None
        when A itself reaches the Nyquist index.
        """
        band = min(self.grid.dims) // 2 - 1 - max_significant_mode(self.grid, self.A.values)
        if band < 0:
            return None
        shape = (2, *self.grid.dims)
        coefficients = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        coefficients[:, self.grid.mode_index > band] = 0.0
        u = ifft3(coefficients)
        first, second = self.apply(u), self.apply_scalar_form(u)
        return float(np.linalg.norm(first - second) / max(np.linalg.norm(first), 1e-300))


def covariant_derivative(A: VectorField, k: int, h: float, u: SpinorField) -> SpinorField:
    """``(hD_k - A_k) u`` with D_k = -i d_k spectrally.

    Args:
        A: Vector potential.
        k: Direction, 1, 2 or 3.
        h: Semiclassical parameter.
        u: Spinor field.

    Returns:
        The covariant derivative as a spinor field.
    """
    if k not in (1, 2, 3):
        raise OperatorError(f"direction must be 1, 2 or 3, got {k}")
    A.grid.require_same(u.grid)
    values = np.asarray(u.values)
    wavenumber = A.grid.derivative_wavenumbers[k - 1]
    out = ifft3(h * wavenumber * fft3(values)) - A.values[k - 1] * values
    return SpinorField(u.grid, out)


def assemble(
    grid: Grid,
    A: VectorField,
    V: ScalarField,
    h: float,
    self_check: bool = True,
    seed: int = 0,
) -> PauliOperator:
    """Assemble H_{A,V} after validating grid, resolution and consistency.

    Args:
        grid: Grid shared by A and V.
        A: Vector potential.
        V: Potential.
        h: Semiclassical parameter, h >= 4 * max spacing / pi.
        self_check: Run the Hermiticity and two-form consistency checks.
        seed: Seed for the random check spinors.

    Returns:
        The operator.

    Raises:
        GridMismatchError: If A or V live on another grid.
        ResolutionError: If h is below the resolved minimum.
        OperatorError: If a self-check fails.
    """
    grid.require_same(A.grid)
    grid.require_same(V.grid)
    if h <= 0 or h < grid.min_h * (1 - 1e-12):
        raise ResolutionError(h, grid.min_h)
    operator = PauliOperator(grid, A, V, h)
    if not self_check:
        return operator

    rng = np.random.default_rng(seed)
    hermiticity = operator.hermiticity_defect(rng)
    if hermiticity > HERMITICITY_TOLERANCE:
        raise OperatorError(f"operator is not Hermitian: defect {hermiticity:.3e}")
    consistency = operator.consistency_defect(rng)
    if consistency is None:
        logger.warning("A has content at the Nyquist index; two-form consistency check skipped")
    elif consistency > PAULI_CONSISTENCY_TOLERANCE:
        raise OperatorError(f"squared and Zeeman forms disagree: defect {consistency:.3e}")
    logger.debug(
        "Assembled Pauli operator dims=%s h=%g (hermiticity %.1e, consistency %s)",
        grid.dims,
        h,
        hermiticity,
        "n/a" if consistency is None else f"{consistency:.1e}",
    )
    return operator


@dataclass(frozen=True, eq=False)
class GaugeTransform:
    """A' = A + grad chi together with the spinor map u -> exp(i chi / h) u."""

    A_prime: VectorField
    chi: ScalarField
    h: float

    def apply(self, u: SpinorField) -> SpinorField:
        """Unitary action on spinors intertwining H_{A,V} and H_{A',V}."""
        phase = np.exp(1j * self.chi.values / self.h)
        return SpinorField(u.grid, phase * np.asarray(u.values))


def gauge_transform(A: VectorField, chi: ScalarField, h: float) -> GaugeTransform:
    """Gauge-transform a vector potential.

    Args:
        A: Vector potential.
        chi: Smooth gauge function, resolved within two thirds of the Nyquist index.
        h: Semiclassical parameter of the spinor phase.

    Returns:
        The transformed potential and spinor map.

    Raises:
        AliasingError: If chi carries unresolved frequencies.
    """
    A.grid.require_same(chi.grid)
    limit = int(2 * (min(A.grid.dims) // 2) / 3)
    top = max_significant_mode(A.grid, chi.values)
    if top > limit:
        raise AliasingError(top, limit)
    A_prime = VectorField(A.grid, A.values + gradient_values(A.grid, chi.values))
    return GaugeTransform(A_prime=A_prime, chi=chi, h=float(h))
