"""A-priori bounds and regularity diagnostics of the self-generated field."""

import itertools
import logging
import math
from collections.abc import Sequence

import numpy as np

from paulilab.exceptions import DomainViolationError
from paulilab.models.domain.selfgen import (
    Diagnostics,
    InequalityCheck,
    InequalityReport,
    LowerBoundRow,
)
from paulilab.services.fields.fields import ScalarField, VectorField
from paulilab.services.fields.grid import Grid
from paulilab.services.fields.spectral import fft3, grad_energy, ifft3, jacobian_values
from paulilab.services.spectra import SpectralResult, diag_density, trace_minus

logger = logging.getLogger(__name__)

SIGN_TOLERANCE = 1e-10


def _implied(lhs: float, scale: float) -> float:
    return lhs / scale if scale > 0 else 0.0


def sobolev_ratio(A: VectorField) -> float:
    """``||A||_6 / ||dA||``; 0 for A = 0."""
    G = grad_energy(A)
    if G <= 0:
        return 0.0
    magnitude = np.sqrt(np.sum(A.values**2, axis=0))
    return A.grid.integrate(magnitude**6) ** (1.0 / 6.0) / math.sqrt(G)


def inequality_suite(
    S: SpectralResult,
    A: VectorField,
    V: ScalarField,
    h: float,
    kappa: float,
    M: float | None = None,
) -> InequalityReport:
    """Evaluate both sides of the a-priori bounds and the constants they imply.

    Checks, by name:
        ``energy_lower``: E >= -C h^-3.
        ``field_energy``: (kappa h^2)^-1 int |dA|^2 <= C h^-3.
        ``field_energy_M``: (kappa h^2)^-1 int |dA|^2 <= C_1 M.
        ``magnetic_lieb_thirring``: Tr^- >= -C h^-3 int V_+^{5/2}
            - C h^2 (h^-2 int |dA|^2)^{3/4} (h^-8 int V_+^4)^{1/4}.
        ``diagonal_density``: e(x, x, 0) <= C h^-3.

    Only the sign conditions (Tr^- <= 0, nonnegative field energy) can fail.

    Args:
        S: Spectrum of H_{A,V}, complete below 0.
        A: Vector potential, usually a minimizer.
        V: Potential.
        h: Semiclassical parameter.
        kappa: Coupling.
        M: Reference scale, at least 1/h; defaults to 1/h.

    Returns:
        The report.
    """
    M = 1.0 / h if M is None else M
    if M < 1.0 / h * (1 - 1e-12):
        raise DomainViolationError("M", f"must be >= 1/h = {1.0 / h:.4g}, got {M}")
    trace = trace_minus(S)
    G = grad_energy(A)
    field = G / (kappa * h**2)
    energy = trace + field
    positive = V.positive_part()
    lt_scale = h**-3 * V.grid.integrate(positive**2.5) + h**2 * (G / h**2) ** 0.75 * (
        h**-8 * V.grid.integrate(positive**4)
    ) ** 0.25
    density_peak = float(diag_density(S, 0.0).values.max(initial=0.0))

    checks = [
        InequalityCheck(
            name="energy_lower",
            lhs=energy,
            rhs_scale=-(h**-3),
            implied_constant=max(0.0, -energy * h**3),
        ),
        InequalityCheck(
            name="field_energy",
            lhs=field,
            rhs_scale=h**-3,
            implied_constant=field * h**3,
            holds=G >= -SIGN_TOLERANCE,
        ),
        InequalityCheck(name="field_energy_M", lhs=field, rhs_scale=M, implied_constant=field / M),
        InequalityCheck(
            name="magnetic_lieb_thirring",
            lhs=trace,
            rhs_scale=-lt_scale,
            implied_constant=_implied(-trace, lt_scale),
            holds=trace <= SIGN_TOLERANCE and (lt_scale > 0 or trace >= -SIGN_TOLERANCE),
        ),
        InequalityCheck(
            name="diagonal_density",
            lhs=density_peak,
            rhs_scale=h**-3,
            implied_constant=density_peak * h**3,
        ),
    ]
    report = InequalityReport(h=h, kappa=kappa, checks=checks, sobolev_ratio=sobolev_ratio(A))
    if not report.holds:
        logger.warning("Sign condition violated at h=%g kappa=%g", h, kappa)
    return report


def lower_bound_family(
    energy: float, A: VectorField, h: float, kappa: float, deltas: Sequence[float]
) -> list[LowerBoundRow]:
    """Smallest C with ``E(A) >= -C h^-3 - C delta^3 h^-3 + (1/kappa - 1/delta) h^-1 int |dA|^2``.

    Args:
        energy: E(A), evaluated by the caller.
        A: The field.
        h: Semiclassical parameter.
        kappa: Coupling.
        deltas: Positive values of delta.

    Returns:
        One row per delta.
    """
    G = grad_energy(A)
    rows = []
    for delta in deltas:
        if delta <= 0:
            raise DomainViolationError("delta", f"must be positive, got {delta}")
        field_term = (1.0 / kappa - 1.0 / delta) * G / h
        implied = max(0.0, (field_term - energy) * h**3 / (1.0 + delta**3))
        rows.append(LowerBoundRow(delta=delta, field_term=field_term, implied_constant=implied))
    return rows


def _second_derivatives(A: VectorField) -> np.ndarray:
    """``d_i d_j A_k``, shape (3, 3, 3, *dims)."""
    coefficients = fft3(A.values)
    k = A.grid.derivative_wavenumbers
    return np.stack(
        [np.stack([ifft3(-k[i] * k[j] * coefficients).real for j in range(3)]) for i in range(3)]
    )


def _offsets_within(grid: Grid, radius: float) -> list[tuple[tuple[int, int, int], float]]:
    """Integer site offsets with 0 < |d| <= radius, one per +-d pair."""
    pairs = zip(grid.spacing, grid.dims, strict=True)
    reach = [min(int(radius / dx), (n - 1) // 2) for dx, n in pairs]
    found = []
    for offset in itertools.product(*(range(-r, r + 1) for r in reach)):
        if offset <= (0, 0, 0):
            continue
        distance = math.sqrt(sum((o * dx) ** 2 for o, dx in zip(offset, grid.spacing, strict=True)))
        if distance <= radius + 1e-12:
            found.append((offset, distance))
    return found


def holder_seminorm(A: VectorField, theta: float, radius: float = 1.0) -> float:
    """Discrete ``C^theta`` seminorm of dA over site pairs at most ``radius`` apart.

    For theta in (0, 1) this is the Hoelder quotient of dA itself; for theta
    in (1, 2) the quotient of the second derivatives at exponent theta - 1.
    """
    if not (0 < theta < 2) or theta == 1:
        raise DomainViolationError("theta", f"must lie in (0, 1) or (1, 2), got {theta}")
    if theta < 1:
        values, exponent = jacobian_values(A), theta
    else:
        values, exponent = _second_derivatives(A), theta - 1
    values = values.reshape(-1, *A.grid.dims)
    worst = 0.0
    for offset, distance in _offsets_within(A.grid, radius):
        shifted = np.roll(values, shift=offset, axis=(1, 2, 3))
        difference = np.sqrt(np.sum((shifted - values) ** 2, axis=0)).max()
        worst = max(worst, float(difference) / distance**exponent)
    return worst


def local_gradient_norm(A: VectorField, radius: float = 1.0) -> float:
    """``sup_y ||dA||_{L2(B(y, radius))}`` by FFT convolution with the ball indicator."""
    grid = A.grid
    density = np.sum(jacobian_values(A) ** 2, axis=(0, 1))
    offsets = grid.periodic_offsets((0.0, 0.0, 0.0))
    ball = (np.sum(offsets**2, axis=0) <= radius**2 + 1e-12).astype(float)
    # ball indicator is centred at the origin site of the centred grid
    ball = np.fft.ifftshift(ball)
    local = ifft3(fft3(density) * fft3(ball)).real * grid.cell_volume
    return float(np.sqrt(max(local.max(), 0.0)))


def predicted_sup_bound(h: float, kappa: float) -> float:
    """``kappa^{4/5} |log h|^{3/5} h^{1/5}``."""
    return kappa**0.8 * abs(math.log(h)) ** 0.6 * h**0.2


def diagnostics(
    A: VectorField, h: float, kappa: float, M_ref: float | None = None, theta: float = 1.5
) -> Diagnostics:
    """Size and regularity of A.

    Args:
        A: Vector potential.
        h: Semiclassical parameter.
        kappa: Coupling.
        M_ref: Reference scale M, defaults to 1/h.
        theta: Hoelder exponent, in (0, 1) or (1, 2).

    Returns:
        Diagnostics.
    """
    M = 1.0 / h if M_ref is None else M_ref
    magnitude = np.sqrt(np.sum(jacobian_values(A) ** 2, axis=(0, 1)))
    mu = float(magnitude.max())
    return Diagnostics(
        mu=mu,
        mu_bar=max(mu, 1.0),
        varsigma=kappa * M * h**1.5,
        M=M,
        holder=holder_seminorm(A, theta),
        theta=theta,
        gradient_norm=math.sqrt(max(grad_energy(A), 0.0)),
        local_gradient_norm=local_gradient_norm(A),
        predicted_sup=predicted_sup_bound(h, kappa),
    )
