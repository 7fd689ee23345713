"""Protocol definitions shared by the numerical services.

Eigensolvers only need something that applies a Hermitian map to flat complex
vectors, so the Pauli operator, its ψ-localized variant and the partition sum
all satisfy the same contract.
"""

from typing import Protocol, runtime_checkable

import numpy as np

from paulilab.services.fields.grid import Grid


@runtime_checkable
class HermitianOperator(Protocol):
    """A Hermitian operator on spinor fields of a fixed grid.

    Used by: PauliOperator, LocalizedOperator, PartitionSumOperator
    """

    grid: Grid
    h: float

    @property
    def dimension(self) -> int:
        """Length of the flattened complex vectors the operator acts on."""
        ...

    def dense_matrix(self) -> np.ndarray:
        """Explicit matrix, for small problems only."""
        ...

    @property
    def lower_bound(self) -> float:
        """A value no eigenvalue falls below (used to shift the spectrum)."""
        ...

    def apply_flat(self, vectors: np.ndarray) -> np.ndarray:
        """Apply the operator to one flat vector or to the columns of a matrix.

        Args:
            vectors: Array of shape (dimension,) or (dimension, k).

        Returns:
            Array of the same shape.
        """
        ...

