"""Closed-form Weyl expressions of the Pauli operator with spin trace 2.

All functions are evaluated by the same grid quadrature (site sum times cell
volume), so local fields integrate exactly to their global values. Weyl_1 is
the tau-integral of tau d Weyl(tau) over (-inf, 0] and is therefore negative.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from paulilab.exceptions import DomainViolationError
from paulilab.models.constants import WEYL1_COEFFICIENT, WEYL_TAU_COEFFICIENT
from paulilab.models.domain.weyl import CorrectedWeyl, WeylSummary
from paulilab.services.fields.fields import ScalarField, VectorField
from paulilab.services.fields.spectral import gradient_values, laplacian_values

logger = logging.getLogger(__name__)

MAX_SYMBOL_ORDER = 2


def _require_h(h: float) -> None:
    if h <= 0:
        raise DomainViolationError("h", f"must be positive, got {h}")


def weyl_tau(V: ScalarField, h: float, tau: float = 0.0) -> float:
    """``(1/3 pi^2) h^-3 int (V + tau)_+^{3/2}``."""
    _require_h(h)
    return WEYL_TAU_COEFFICIENT * h**-3 * V.grid.integrate(np.maximum(V.values + tau, 0.0) ** 1.5)


def weyl1_local(V: ScalarField, h: float) -> ScalarField:
    """Pointwise ``-(2/15 pi^2) h^-3 V_+^{5/2}``."""
    _require_h(h)
    return ScalarField(V.grid, -WEYL1_COEFFICIENT * h**-3 * V.positive_part() ** 2.5)


def weyl1(V: ScalarField, h: float) -> float:
    """Weyl_1, the integral of :func:`weyl1_local`."""
    return weyl1_local(V, h).integrate()


def weyl1_tau_integral(V: ScalarField, h: float) -> tuple[float, float]:
    """Weyl_1 as ``-int_{-max V}^0 Weyl(tau) d tau`` by adaptive quadrature.

    Integrating ``tau d Weyl(tau)`` by parts leaves this form because Weyl
    vanishes below -max V.

    Returns:
        The value and the quadrature error estimate.
    """
    _require_h(h)
    top = float(V.values.max())
    if top <= 0:
        return 0.0, 0.0
    value, error = quad(lambda t: weyl_tau(V, h, t), -top, 0.0, epsabs=0.0, epsrel=1e-9, limit=500)
    return -value, error


def _correction_integrals(V: ScalarField) -> tuple[float, float]:
    """``int V_+^{3/2} Laplacian V`` and ``int V_+^{1/2} |grad V|^2``."""
    positive = V.positive_part()
    grad_sq = np.sum(gradient_values(V.grid, V.values) ** 2, axis=0)
    first = V.grid.integrate(positive**1.5 * laplacian_values(V.grid, V.values))
    second = V.grid.integrate(positive**0.5 * grad_sq)
    return first, second


def combined_kappa(kappa1: float, kappa2: float) -> float:
    """Single constant of the integrated form."""
    return kappa1 - 2.0 * kappa2 / 3.0


def weyl_corrected(V: ScalarField, h: float, kappa1: float, kappa2: float) -> CorrectedWeyl:
    """Corrected Weyl_1 in the two-constant and the one-constant form.

    Args:
        V: Potential.
        h: Semiclassical parameter.
        kappa1: Weight of ``h^-1 int V_+^{3/2} Laplacian V``.
        kappa2: Weight of ``h^-1 int V_+^{1/2} |grad V|^2``.

    Returns:
        Both evaluations and their discrepancy.
    """
    base = weyl1(V, h)
    laplace_term, gradient_term = _correction_integrals(V)
    value = base + (kappa1 * laplace_term + kappa2 * gradient_term) / h
    kappa = combined_kappa(kappa1, kappa2)
    integrated = base + kappa * laplace_term / h
    discrepancy = abs(value - integrated)
    logger.debug("Corrected Weyl_1 h=%g: %.8g vs %.8g", h, value, integrated)
    return CorrectedWeyl(value=value, integrated=integrated, kappa=kappa, discrepancy=discrepancy)


def weyl1_corrected_local(V: ScalarField, h: float, kappa1: float, kappa2: float) -> ScalarField:
    """Pointwise integrand of the two-constant corrected Weyl_1."""
    positive = V.positive_part()
    grad_sq = np.sum(gradient_values(V.grid, V.values) ** 2, axis=0)
    correction = (
        kappa1 * positive**1.5 * laplacian_values(V.grid, V.values)
        + kappa2 * positive**0.5 * grad_sq
    )
    return ScalarField(V.grid, weyl1_local(V, h).values + correction / h)


def ball_moment(order: int, radius: float) -> float:
    """``int_{|eta| <= R} |eta|^order d eta`` in three dimensions."""
    return 4.0 * math.pi * radius ** (order + 3) / (order + 3)


def weyl_alpha_beta(
    x: tuple[float, float, float],
    A: VectorField,
    V: ScalarField,
    h: float,
    alpha: tuple[int, int, int],
    beta: tuple[int, int, int],
    tau: float = 0.0,
) -> np.ndarray:
    """Spin-matrix phase-space integral of ``((xi - A(x)).sigma)^{|alpha|+|beta|}``.

    Integrates over the ball ``|xi - A(x)|^2 <= V(x) + tau`` with the measure
    ``(2 pi h)^-3``. Radial symmetry leaves ``|eta|^m`` times the identity for
    even order m and zero for odd m.

    Args:
        x: Point, evaluated at the nearest grid site.
        A: Vector potential.
        V: Potential.
        h: Semiclassical parameter.
        alpha: Multi-index.
        beta: Multi-index.
        tau: Spectral parameter.

    Returns:
        A 2x2 complex matrix.

    Raises:
        DomainViolationError: If ``|alpha| + |beta| > 2``.
    """
    _require_h(h)
    order = sum(alpha) + sum(beta)
    if order > MAX_SYMBOL_ORDER or min(*alpha, *beta) < 0:
        raise DomainViolationError("|alpha|+|beta|", f"must be 0, 1 or 2, got {alpha}, {beta}")
    A.grid.require_same(V.grid)
    index, _ = V.grid.nearest_site(x)
    radius_sq = float(V.values[index]) + tau
    if radius_sq <= 0 or order % 2 == 1:
        return np.zeros((2, 2), dtype=np.complex128)
    moment = ball_moment(order, math.sqrt(radius_sq))
    return (2.0 * math.pi * h) ** -3 * moment * np.eye(2, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class WeylReport:
    """All Weyl quantities of one potential at one h."""

    h: float
    tau: float
    weyl_tau: float
    weyl1: float
    weyl1_local: ScalarField
    corrected: CorrectedWeyl
    kappa1: float
    kappa2: float
    quadrature_error: float

    @property
    def kappa(self) -> float:
        """kappa1 - (2/3) kappa2."""
        return combined_kappa(self.kappa1, self.kappa2)

    def summary(self) -> WeylSummary:
        """Serializable record."""
        return WeylSummary(
            h=self.h,
            tau=self.tau,
            weyl_tau=self.weyl_tau,
            weyl1=self.weyl1,
            corrected=self.corrected.value,
            kappa1=self.kappa1,
            kappa2=self.kappa2,
            kappa=self.kappa,
            quadrature_error=self.quadrature_error,
        )


def weyl_report(
    V: ScalarField, h: float, tau: float = 0.0, kappa1: float = 0.0, kappa2: float = 0.0
) -> WeylReport:
    """Evaluate every Weyl expression for V at h."""
    local = weyl1_local(V, h)
    closed = local.integrate()
    by_tau, _ = weyl1_tau_integral(V, h)
    return WeylReport(
        h=h,
        tau=tau,
        weyl_tau=weyl_tau(V, h, tau),
        weyl1=closed,
        weyl1_local=local,
        corrected=weyl_corrected(V, h, kappa1, kappa2),
        kappa1=kappa1,
        kappa2=kappa2,
        quadrature_error=abs(closed - by_tau),
    )
