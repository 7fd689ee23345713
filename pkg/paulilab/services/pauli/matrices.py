"""Pauli matrices and their action on the spin axis of spinor arrays.

Spinor arrays carry the spin component on axis -4, followed by the three
spatial axes; any leading axes are batch axes.
"""

import numpy as np

SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
SIGMA.flags.writeable = False


def apply_sigma(j: int, u: np.ndarray) -> np.ndarray:
    """Apply sigma_j (0-based) to the spin axis of ``u``."""
    up, down = u[..., 0, :, :, :], u[..., 1, :, :, :]
    match j:
        case 0:
            return np.stack([down, up], axis=-4)
        case 1:
            return np.stack([-1j * down, 1j * up], axis=-4)
        case 2:
            return np.stack([up, -down], axis=-4)
    raise ValueError(f"Pauli index must be 0, 1 or 2, got {j}")


def sigma_dot(w: list[np.ndarray] | np.ndarray) -> np.ndarray:
    """``sum_k sigma_k w_k`` for three spinor arrays."""
    w1, w2, w3 = w
    return np.stack(
        [
            w1[..., 1, :, :, :] - 1j * w2[..., 1, :, :, :] + w3[..., 0, :, :, :],
            w1[..., 0, :, :, :] + 1j * w2[..., 0, :, :, :] - w3[..., 1, :, :, :],
        ],
        axis=-4,
    )


def anticommutator_defect() -> float:
    """Max deviation of sigma_j sigma_k + sigma_k sigma_j from 2 delta_jk I."""
    identity = np.eye(2)
    worst = 0.0
    for j in range(3):
        for k in range(3):
            anti = SIGMA[j] @ SIGMA[k] + SIGMA[k] @ SIGMA[j]
            worst = max(worst, float(np.abs(anti - 2 * (j == k) * identity).max()))
    return worst
