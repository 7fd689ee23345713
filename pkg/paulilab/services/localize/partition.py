"""Quadratic partitions of unity on the torus."""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from paulilab.exceptions import CutoffError
from paulilab.services.fields.cutoff import CutoffAudit, audit_profile, max_gradient, smooth_step
from paulilab.services.fields.fields import ScalarField
from paulilab.services.fields.grid import Grid

logger = logging.getLogger(__name__)

MIN_SITES_PER_SCALE = 4


@dataclass(frozen=True, eq=False)
class Partition:
    """Members psi_j with sum_j psi_j^2 = 1 at every site."""

    grid: Grid
    gamma: float
    centers: list[tuple[float, float, float]]
    members: list[ScalarField] = field(repr=False)
    audits: list[CutoffAudit] = field(repr=False)
    derivative_constant: float = 0.0

    @property
    def completeness_defect(self) -> float:
        """max |sum_j psi_j^2 - 1|."""
        total = sum(psi.values**2 for psi in self.members)
        return float(np.abs(total - 1.0).max())

    def __len__(self) -> int:
        return len(self.members)


def _axis_bumps(grid: Grid, axis: int, count: int, width: float) -> list[tuple[float, np.ndarray]]:
    """Centers and 1-D periodic bumps, 1 within width/2 and 0 beyond width."""
    length = grid.box[axis]
    coordinates = grid.axes[axis]
    if count == 1:
        return [(0.0, np.ones_like(coordinates))]
    bumps = []
    for index in range(count):
        center = -length / 2 + (index + 0.5) * length / count
        offset = coordinates - center
        distance = np.abs(offset - length * np.rint(offset / length))
        bumps.append((center, smooth_step((width - distance) / (width / 2))))
    return bumps


def build_partition(grid: Grid, gamma: float) -> Partition:
    """Overlapping product bumps on a gamma-lattice, normalized to a quadratic partition.

    Args:
        grid: Target grid.
        gamma: Partition scale; one member per axis when gamma covers the box.

    Returns:
        The partition with its measured derivative constant
        ``c = gamma * max_j max |d psi_j|``.

    Raises:
        CutoffError: If gamma is below four grid spacings.
    """
    minimum = MIN_SITES_PER_SCALE * grid.max_spacing
    if gamma < minimum * (1 - 1e-12):
        raise CutoffError(
            f"partition scale {gamma:.4g} is below {MIN_SITES_PER_SCALE} spacings ({minimum:.4g})"
        )

    counts = [max(1, int(round(length / gamma))) for length in grid.box]
    per_axis = [
        _axis_bumps(grid, axis, count, length / count)
        for axis, (count, length) in enumerate(zip(counts, grid.box, strict=True))
    ]
    raw = []
    centers = []
    for (c1, b1), (c2, b2), (c3, b3) in itertools.product(*per_axis):
        centers.append((c1, c2, c3))
        raw.append(b1[:, None, None] * b2[None, :, None] * b3[None, None, :])

    norm = np.sqrt(sum(b**2 for b in raw))
    if norm.min() <= 0:
        raise CutoffError("partition bumps leave sites uncovered")
    members = [ScalarField(grid, b / norm) for b in raw]
    scale = np.full(grid.dims, float(gamma))
    audits = [audit_profile(grid, psi.values, scale) for psi in members]
    constant = gamma * max(max_gradient(grid, psi.values) for psi in members)
    partition = Partition(
        grid=grid,
        gamma=float(gamma),
        centers=centers,
        members=members,
        audits=audits,
        derivative_constant=constant,
    )
    logger.debug(
        "Partition gamma=%g: %d members, completeness defect %.1e, c=%.3g",
        gamma,
        len(members),
        partition.completeness_defect,
        constant,
    )
    return partition


def perturbed_partition(partition: Partition, delta: float, seed: int = 0) -> Partition:
    """Copy with members multiplied by 1 + delta * noise, breaking completeness by O(delta)."""
    rng = np.random.default_rng(seed)
    members = []
    for psi in partition.members:
        noise = rng.uniform(-1.0, 1.0, size=psi.grid.dims)
        members.append(ScalarField(psi.grid, np.clip(psi.values * (1 + delta * noise), 0.0, 1.0)))
    return Partition(
        grid=partition.grid,
        gamma=partition.gamma,
        centers=partition.centers,
        members=members,
        audits=partition.audits,
        derivative_constant=partition.derivative_constant,
    )
