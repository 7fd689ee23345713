"""Periodic computational torus."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from paulilab.exceptions import GridError, GridMismatchError
from paulilab.models.constants import MIN_GRID_POINTS, RESOLUTION_FACTOR


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on a box centred at the origin.

    Site ``j`` along axis ``i`` sits at ``-L_i/2 + j * L_i/n_i``, so the origin
    is a site whenever ``n_i`` is even.
    """

    dims: tuple[int, int, int]
    box: tuple[float, float, float]

    @property
    def spacing(self) -> tuple[float, float, float]:
        """Cell edge per axis."""
        spacing = tuple(length / n for length, n in zip(self.box, self.dims, strict=True))
        return spacing  # type: ignore[return-value]

    @property
    def max_spacing(self) -> float:
        """Largest cell edge."""
        return max(self.spacing)

    @property
    def cell_volume(self) -> float:
        """Volume of one cell; integrals are site sums times this."""
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        """Torus volume."""
        return float(np.prod(self.box))

    @property
    def n_sites(self) -> int:
        """Number of grid sites."""
        return int(np.prod(self.dims))

    @property
    def min_h(self) -> float:
        """Smallest semiclassical parameter whose wavelength the grid resolves."""
        return RESOLUTION_FACTOR * self.max_spacing

    @cached_property
    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """1-D site coordinates per axis."""
        return tuple(
            -length / 2 + np.arange(n) * (length / n)
            for length, n in zip(self.box, self.dims, strict=True)
        )  # type: ignore[return-value]

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Site coordinates, shape (3, n1, n2, n3)."""
        mesh = np.meshgrid(*self.axes, indexing="ij")
        coords = np.stack(mesh)
        coords.flags.writeable = False
        return coords

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Angular wavenumbers per axis, broadcastable to the grid shape."""
        out = []
        for axis, (length, n) in enumerate(zip(self.box, self.dims, strict=True)):
            k = 2 * np.pi * np.fft.fftfreq(n, d=length / n)
            shape = [1, 1, 1]
            shape[axis] = n
            out.append(k.reshape(shape))
        return tuple(out)  # type: ignore[return-value]

    @cached_property
    def derivative_wavenumbers(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """First-derivative multipliers: wavenumbers with the Nyquist mode zeroed.

        Zeroing keeps derivatives of real fields real and the symbol of
        ``-i d/dx`` Hermitian and odd.
        """
        out = []
        for k, n in zip(self.wavenumbers, self.dims, strict=True):
            k = k.copy()
            if n % 2 == 0:
                k.flat[n // 2] = 0.0
            out.append(k)
        return tuple(out)  # type: ignore[return-value]

    @cached_property
    def k_squared(self) -> np.ndarray:
        """Symbol of -Laplacian (full wavenumbers, Nyquist included)."""
        k1, k2, k3 = self.wavenumbers
        return k1**2 + k2**2 + k3**2

    @cached_property
    def mode_index(self) -> np.ndarray:
        """Largest |integer mode| over the three axes for every Fourier coefficient."""
        idx = np.meshgrid(
            *(np.abs(np.fft.fftfreq(n, d=1.0 / n)) for n in self.dims), indexing="ij"
        )
        return np.maximum(np.maximum(idx[0], idx[1]), idx[2])

    def nearest_site(
        self, point: tuple[float, float, float]
    ) -> tuple[tuple[int, ...], tuple[float, ...]]:
        """Snap a point to the nearest site (periodically).

        Returns:
            The site index and its coordinates.
        """
        index = tuple(
            int(np.rint((p + length / 2) / (length / n))) % n
            for p, length, n in zip(point, self.box, self.dims, strict=True)
        )
        snapped = tuple(float(self.axes[i][j]) for i, j in enumerate(index))
        return index, snapped

    def periodic_offsets(self, center: tuple[float, float, float]) -> np.ndarray:
        """Minimum-image displacement of every site from ``center``, shape (3, n1, n2, n3)."""
        out = np.empty_like(self.coordinates)
        for axis, length in enumerate(self.box):
            d = self.coordinates[axis] - center[axis]
            out[axis] = d - length * np.rint(d / length)
        return out

    def integrate(self, values: np.ndarray) -> float:
        """Site sum times cell volume over the trailing three axes."""
        return float(np.sum(values) * self.cell_volume)

    def require_same(self, other: "Grid") -> None:
        """Raise if ``other`` is a different grid."""
        if other != self:
            raise GridMismatchError(self.dims, other.dims)


def build_grid(dims: tuple[int, int, int], box: tuple[float, float, float]) -> Grid:
    """Build a periodic grid.

    Args:
        dims: Sites per axis, at least 4 each.
        box: Positive box lengths.

    Returns:
        The grid.

    Raises:
        GridError: If dims or box are out of range.
    """
    dims = tuple(int(n) for n in dims)  # type: ignore[assignment]
    box = tuple(float(length) for length in box)  # type: ignore[assignment]
    if len(dims) != 3 or len(box) != 3:
        raise GridError(dims, "dims and box need three entries")
    if min(dims) < MIN_GRID_POINTS:
        raise GridError(dims, f"at least {MIN_GRID_POINTS} sites per axis are required")
    if min(box) <= 0 or not all(np.isfinite(box)):
        raise GridError(dims, f"box lengths must be positive and finite, got {box}")
    return Grid(dims=dims, box=box)
