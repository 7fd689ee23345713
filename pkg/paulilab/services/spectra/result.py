"""Spectral results and smoothing profiles."""

from dataclasses import dataclass, field

import numpy as np

from paulilab.models.constants import THRESHOLD_AMBIGUITY
from paulilab.models.enums import SolverKind
from paulilab.services.fields.cutoff import smooth_step
from paulilab.services.fields.fields import SpinorField
from paulilab.services.fields.grid import Grid


def fix_phases(vectors: np.ndarray, tolerance: float = 1e-8) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real and positive."""
    out = np.array(vectors, dtype=np.complex128, copy=True)
    for n in range(out.shape[1]):
        column = out[:, n]
        magnitude = np.abs(column)
        peak = magnitude.max(initial=0.0)
        if peak == 0.0:
            continue
        first = int(np.argmax(magnitude > tolerance * peak))
        out[:, n] = column * (np.conj(column[first]) / magnitude[first])
    return out


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Eigenpairs of a Hermitian operator below a threshold.

    ``vectors`` holds Euclidean-orthonormal flat spinors as columns; the
    physical eigenfunctions are these divided by the square root of the cell
    volume. Eigenvalues within the gap tolerance of the threshold are kept
    apart in ``ambiguous_values``.
    """

    grid: Grid
    h: float
    threshold: float
    eigenvalues: np.ndarray
    vectors: np.ndarray = field(repr=False)
    residuals: np.ndarray
    solver: SolverKind
    usable: bool = True
    ambiguous_values: np.ndarray = field(default_factory=lambda: np.zeros(0))
    certified: bool | None = None
    gap_tolerance: float = THRESHOLD_AMBIGUITY

    @classmethod
    def empty(
        cls, grid: Grid, h: float, threshold: float, solver: SolverKind, usable: bool = True
    ) -> "SpectralResult":
        """A result with no eigenpairs."""
        return cls(
            grid=grid,
            h=h,
            threshold=threshold,
            eigenvalues=np.zeros(0),
            vectors=np.zeros((2 * grid.n_sites, 0), dtype=np.complex128),
            residuals=np.zeros(0),
            solver=solver,
            usable=usable,
        )

    @property
    def count(self) -> int:
        """Number of eigenpairs held."""
        return int(self.eigenvalues.size)

    @property
    def threshold_ambiguous(self) -> bool:
        """True when eigenvalues were seen within the gap tolerance of zero or the threshold."""
        near_zero = np.abs(self.eigenvalues) <= self.gap_tolerance
        return bool(self.ambiguous_values.size or np.any(near_zero))

    def gram_defect(self) -> float:
        """max |V^H V - I|."""
        if self.count == 0:
            return 0.0
        gram = self.vectors.conj().T @ self.vectors
        return float(np.abs(gram - np.eye(self.count)).max())

    def eigenfunction(self, n: int) -> SpinorField:
        """Physically normalized n-th eigenfunction."""
        return SpinorField.from_flat(self.grid, self.vectors[:, n])

    def spinor_array(self, indices: np.ndarray | None = None) -> np.ndarray:
        """Physically normalized eigenfunctions, shape (count, 2, n1, n2, n3)."""
        selected = self.vectors if indices is None else self.vectors[:, indices]
        arrays = selected.T.reshape(selected.shape[1], 2, *self.grid.dims)
        return arrays / np.sqrt(self.grid.cell_volume)

    def site_weights(self) -> np.ndarray:
        """Spin-traced |v_n(x)|^2 of the Euclidean vectors, shape (count, n1, n2, n3)."""
        squared = np.abs(self.vectors.T.reshape(self.count, 2, *self.grid.dims)) ** 2
        return squared.sum(axis=1)

    def below(self, tau: float) -> np.ndarray:
        """Indices of eigenvalues <= tau."""
        return np.flatnonzero(self.eigenvalues <= tau)


@dataclass(frozen=True)
class SmoothingSpec:
    """Energy window L with the bump phi (1 on [-1/2, 1/2], supported in [-1, 1])."""

    scale: float

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError(f"smoothing scale must be positive, got {self.scale}")

    def profile(self, s: np.ndarray) -> np.ndarray:
        """phi(s), even, smooth, values in [0, 1]."""
        return 1.0 - smooth_step(2.0 * np.abs(np.asarray(s, dtype=float)) - 1.0)
