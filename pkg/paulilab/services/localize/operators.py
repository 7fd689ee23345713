"""Operators built from H and cutoff multiplications."""

import numpy as np

from paulilab.core.protocols import HermitianOperator
from paulilab.services.fields.fields import ScalarField


def _spin_tiled(psi: ScalarField) -> np.ndarray:
    """psi as a flat multiplier over the (spin, n1, n2, n3) layout."""
    return np.tile(psi.values.reshape(-1), 2)


def _scale_rows(multiplier: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    return multiplier * vectors if vectors.ndim == 1 else multiplier[:, None] * vectors


class LocalizedOperator:
    """``u -> psi H (psi u)``; Hermitian whenever H is."""

    def __init__(self, H: HermitianOperator, psi: ScalarField):
        H.grid.require_same(psi.grid)
        self.H = H
        self.psi = psi
        self.grid = H.grid
        self.h = H.h
        self.multiplier = _spin_tiled(psi)

    @property
    def dimension(self) -> int:
        """Same as H."""
        return self.H.dimension

    @property
    def lower_bound(self) -> float:
        """min(lower bound of H, 0) times max psi^2."""
        return min(self.H.lower_bound, 0.0) * float(self.psi.values.max(initial=0.0)) ** 2

    def apply_flat(self, vectors: np.ndarray) -> np.ndarray:
        """Apply to a flat vector or the columns of a matrix."""
        inner = _scale_rows(self.multiplier, vectors)
        return _scale_rows(self.multiplier, self.H.apply_flat(inner))

    def dense_matrix(self) -> np.ndarray:
        """psi M psi from the explicit matrix M of H."""
        m = self.multiplier
        return m[:, None] * self.H.dense_matrix() * m[None, :]


class PartitionSumOperator:
    """``sum_j psi_j H psi_j`` over a partition."""

    def __init__(self, H: HermitianOperator, members: list[ScalarField]):
        if not members:
            raise ValueError("partition has no members")
        self.H = H
        self.grid = H.grid
        self.h = H.h
        self.parts = [LocalizedOperator(H, psi) for psi in members]

    @property
    def dimension(self) -> int:
        """Same as H."""
        return self.H.dimension

    @property
    def lower_bound(self) -> float:
        """Sum of the member bounds."""
        return sum(part.lower_bound for part in self.parts)

    def apply_flat(self, vectors: np.ndarray) -> np.ndarray:
        """Apply to a flat vector or the columns of a matrix."""
        return sum(part.apply_flat(vectors) for part in self.parts)

    def dense_matrix(self) -> np.ndarray:
        """Explicit matrix."""
        matrix = self.H.dense_matrix()
        total = np.zeros_like(matrix)
        for part in self.parts:
            m = part.multiplier
            total += m[:, None] * matrix * m[None, :]
        return total
