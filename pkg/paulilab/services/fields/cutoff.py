"""Cutoff functions, scaling profiles and their discrete audit."""

import logging
from dataclasses import dataclass, field

import numpy as np

from paulilab.exceptions import CutoffError
from paulilab.models.constants import CUTOFF_AUDIT_FLOOR
from paulilab.services.fields.fields import ScalarField
from paulilab.services.fields.grid import Grid

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.25
MAX_SCALE_SLOPE = 0.5


@dataclass(frozen=True)
class CutoffAudit:
    """Smallest constants making the sampled bounds hold.

    ``order_constants[m]`` is the smallest c with |d^a psi| <= c psi ell^(-2m)
    over all |a| = m at sites where psi exceeds the audit floor.
    """

    order_constants: tuple[float, float, float]
    scale_slope: float
    cubic_constant: float

    @property
    def constant(self) -> float:
        """Overall derivative-bound constant (at least 1)."""
        return max(self.order_constants)


@dataclass(frozen=True, eq=False)
class CutoffSpec:
    """A cutoff psi with its scaling profile ell and audited constants."""

    center: tuple[float, float, float]
    requested_center: tuple[float, float, float]
    radius: float
    taper: float
    scale: ScalarField
    psi: ScalarField
    audit: CutoffAudit = field(repr=False)

    @property
    def snapped(self) -> bool:
        """Whether the requested center was moved to the nearest site."""
        return not np.allclose(self.center, self.requested_center, atol=1e-12)

    @property
    def constant(self) -> float:
        """Smallest admissible derivative-bound constant c."""
        return self.audit.constant


def _exp_window(t: np.ndarray) -> np.ndarray:
    out = np.zeros_like(t)
    positive = t > 0
    out[positive] = np.exp(-1.0 / t[positive])
    return out


def smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity step from 0 (t <= 0) to 1 (t >= 1)."""
    t = np.clip(t, 0.0, 1.0)
    left = _exp_window(t)
    right = _exp_window(1.0 - t)
    return left / (left + right)


def taper_profile(t: np.ndarray) -> np.ndarray:
    """Cubic taper 3t^2 - 2t^3 composed with the exponential step; 1 at t<=0, 0 at t>=1."""
    t = np.clip(t, 0.0, 1.0)
    return 1.0 - smooth_step(3 * t**2 - 2 * t**3)


def _central_difference(values: np.ndarray, axis: int, spacing: float) -> np.ndarray:
    return (np.roll(values, -1, axis=axis) - np.roll(values, 1, axis=axis)) / (2 * spacing)


def audit_profile(grid: Grid, psi: np.ndarray, ell: np.ndarray) -> CutoffAudit:
    """Measure the derivative-bound constants of psi relative to ell.

    Args:
        grid: Grid of both fields.
        psi: Cutoff values in [0, 1].
        ell: Scaling profile, positive where psi is.

    Returns:
        The audit.

    Raises:
        CutoffError: If psi leaves [0, 1] or ell is negative or too steep.
    """
    if psi.min() < -1e-14 or psi.max() > 1 + 1e-12:
        raise CutoffError(f"cutoff leaves [0, 1]: range [{psi.min():.3g}, {psi.max():.3g}]")
    if ell.min() < 0:
        raise CutoffError("scaling profile must be nonnegative")

    slope = 0.0
    for axis, dx in enumerate(grid.spacing):
        forward = np.abs(np.roll(ell, -1, axis=axis) - ell) / dx
        slope = max(slope, float(forward.max()))
    if slope > MAX_SCALE_SLOPE + 1e-12:
        raise CutoffError(f"scaling profile slope {slope:.3g} exceeds {MAX_SCALE_SLOPE}")

    support = psi > CUTOFF_AUDIT_FLOOR
    if not np.any(support):
        return CutoffAudit(order_constants=(1.0, 0.0, 0.0), scale_slope=slope, cubic_constant=0.0)
    if np.any(ell[support] <= 0):
        raise CutoffError("scaling profile vanishes inside the support of the cutoff")

    weight = psi[support]
    first = [_central_difference(psi, a, grid.spacing[a]) for a in range(3)]
    c1 = max(float(np.max(np.abs(d[support]) * ell[support] ** 2 / weight)) for d in first)
    c2 = 0.0
    for a in range(3):
        for b in range(a, 3):
            second = _central_difference(first[a], b, grid.spacing[b])
            c2 = max(c2, float(np.max(np.abs(second[support]) * ell[support] ** 4 / weight)))
    c3 = float(np.max(weight / ell[support] ** 3))
    return CutoffAudit(order_constants=(1.0, c1, c2), scale_slope=slope, cubic_constant=c3)


def distance_scale(
    distance: np.ndarray, floor: float, epsilon: float = DEFAULT_EPSILON
) -> np.ndarray:
    """Scaling profile ``max(epsilon * distance, floor)``; slope at most epsilon."""
    if epsilon > MAX_SCALE_SLOPE:
        raise CutoffError(f"epsilon {epsilon} exceeds the slope limit {MAX_SCALE_SLOPE}")
    return np.maximum(epsilon * np.maximum(distance, 0.0), floor)


def make_cutoff(
    grid: Grid,
    center: tuple[float, float, float],
    radius: float,
    taper: float,
    epsilon: float = DEFAULT_EPSILON,
    ell_floor: float | None = None,
) -> CutoffSpec:
    """Construct a radial cutoff equal to 1 on the inner ball and 0 outside ``radius``.

    The taper occupies the outer ``taper`` fraction of the radius. The center
    is snapped to the nearest site.

    Args:
        grid: Target grid.
        center: Requested center.
        radius: Support radius (0 gives psi identically 0).
        taper: Fraction of the radius used by the taper, in (0, 1].
        epsilon: Slope of the scaling profile (at most 1/2).
        ell_floor: Lower bound of ell, defaults to the largest grid spacing.

    Returns:
        The audited cutoff.

    Raises:
        CutoffError: If the support ball leaves the box or parameters are invalid.
    """
    if radius < 0:
        raise CutoffError(f"radius must be nonnegative, got {radius}")
    if not 0 < taper <= 1:
        raise CutoffError(f"taper must lie in (0, 1], got {taper}")
    requested = tuple(float(c) for c in center)
    _, snapped = grid.nearest_site(requested)
    if snapped != requested:
        logger.debug("Cutoff center %s snapped to site %s", requested, snapped)

    for axis, (c, length, dx) in enumerate(zip(snapped, grid.box, grid.spacing, strict=True)):
        if abs(c) + radius > length / 2 - dx + 1e-12:
            raise CutoffError(
                f"support ball (center {c:.3g}, radius {radius:.3g}) exceeds the box along "
                f"axis {axis} with one-spacing margin"
            )

    floor = grid.max_spacing if ell_floor is None else ell_floor
    r = np.sqrt(np.sum(grid.periodic_offsets(snapped) ** 2, axis=0))
    if radius == 0:
        psi = np.zeros(grid.dims)
    else:
        inner = radius * (1.0 - taper)
        psi = taper_profile((r - inner) / (radius - inner))
        psi[r >= radius] = 0.0
    ell = distance_scale(radius - r, floor, epsilon)
    audit = audit_profile(grid, psi, ell)
    return CutoffSpec(
        center=snapped,  # type: ignore[arg-type]
        requested_center=requested,  # type: ignore[arg-type]
        radius=float(radius),
        taper=float(taper),
        scale=ScalarField(grid, ell),
        psi=ScalarField(grid, psi),
        audit=audit,
    )


def max_gradient(grid: Grid, values: np.ndarray) -> float:
    """max over sites and axes of the central-difference |d_a values|."""
    return max(
        float(np.max(np.abs(_central_difference(values, a, grid.spacing[a])))) for a in range(3)
    )
