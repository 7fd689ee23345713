"""Scalar, vector and spinor fields attached to a grid.

Values are stored read-only; operations return new fields.
"""

from dataclasses import dataclass

import numpy as np

from paulilab.exceptions import FieldError
from paulilab.services.fields.grid import Grid


def _frozen(values: np.ndarray, dtype: type, shape: tuple[int, ...]) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    if array.shape != shape:
        raise FieldError(f"Field values have shape {array.shape}, expected {shape}")
    if not np.all(np.isfinite(array)):
        raise FieldError("Field values must be finite")
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real value per site (V, psi, ell, chi)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values, np.float64, self.grid.dims))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "ScalarField":
        """Field equal to ``value`` everywhere."""
        return cls(grid, np.full(grid.dims, float(value)))

    def integrate(self) -> float:
        """Site sum times cell volume."""
        return self.grid.integrate(self.values)

    def positive_part(self) -> np.ndarray:
        """Pointwise max(values, 0)."""
        return np.maximum(self.values, 0.0)


@dataclass(frozen=True, eq=False)
class VectorField:
    """Three real components per site (A, B, Phi)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", _frozen(self.values, np.float64, (3, *self.grid.dims))
        )

    @classmethod
    def zeros(cls, grid: Grid) -> "VectorField":
        """The zero field."""
        return cls(grid, np.zeros((3, *grid.dims)))

    def __add__(self, other: "VectorField") -> "VectorField":
        self.grid.require_same(other.grid)
        return VectorField(self.grid, self.values + other.values)

    def __sub__(self, other: "VectorField") -> "VectorField":
        self.grid.require_same(other.grid)
        return VectorField(self.grid, self.values - other.values)

    def scaled(self, factor: float) -> "VectorField":
        """Componentwise multiple."""
        return VectorField(self.grid, factor * self.values)

    def inner(self, other: "VectorField") -> float:
        """L2 inner product  sum_j int f_j g_j."""
        self.grid.require_same(other.grid)
        return self.grid.integrate(self.values * other.values)

    def norm(self) -> float:
        """L2 norm."""
        return float(np.sqrt(max(self.inner(self), 0.0)))

    def is_zero(self) -> bool:
        """True when every component vanishes identically."""
        return not np.any(self.values)


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Two complex components per site; norm uses the cell volume."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", _frozen(self.values, np.complex128, (2, *self.grid.dims))
        )

    @classmethod
    def from_flat(cls, grid: Grid, vector: np.ndarray, euclidean: bool = True) -> "SpinorField":
        """Build from a flat solver vector.

        Args:
            grid: Grid the spinor lives on.
            vector: Flat complex vector of length 2 * n_sites.
            euclidean: When True the vector is unit in the plain Euclidean norm
                and is rescaled to unit L2 norm.
        """
        values = np.asarray(vector).reshape(2, *grid.dims)
        if euclidean:
            values = values / np.sqrt(grid.cell_volume)
        return cls(grid, values)

    def flat(self) -> np.ndarray:
        """Flat copy in solver layout."""
        return np.array(self.values).reshape(-1)

    def inner(self, other: "SpinorField") -> complex:
        """L2 inner product <self, other>, antilinear in self."""
        self.grid.require_same(other.grid)
        return complex(np.vdot(self.values, other.values) * self.grid.cell_volume)

    def norm(self) -> float:
        """L2 norm: sqrt of site sum of |components|^2 times cell volume."""
        return float(np.sqrt(self.inner(self).real))

    def density(self) -> np.ndarray:
        """Spin-traced |u(x)|^2."""
        return np.sum(np.abs(self.values) ** 2, axis=0)
