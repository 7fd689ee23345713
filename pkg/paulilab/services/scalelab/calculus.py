"""Rescaling maps, the exponent recurrence, and predicted remainders.

Absolute constants (c, C, epsilon) are left open by the theory; they are
arguments defaulting to 1 and are echoed in every prediction.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from paulilab.exceptions import DomainViolationError
from paulilab.models.domain.scaling import RemainderPrediction, ScaleState
from paulilab.models.enums import RegimeTag

logger = logging.getLogger(__name__)

type Rational = Fraction | int | float | str

ALPHA_FIXED_POINT = Fraction(-5, 2)
RECURRENCE_SUM = Fraction(5, 2)  # alpha + beta + 1 on the recurrence line
NEAR_CRITICAL_KAPPA_H = 0.5


def _require_h(h: float) -> None:
    if not 0 < h < 1:
        raise DomainViolationError("h", f"must lie in (0, 1), got {h}")


def _require_positive(name: str, value: float) -> None:
    if value <= 0:
        raise DomainViolationError(name, f"must be positive, got {value}")


def _rational(value: Rational) -> Fraction:
    if isinstance(value, float):
        # decimal reading, so 0.7 is 7/10 rather than its binary expansion
        return Fraction(repr(value))
    return Fraction(value)


def rescale(h: float, kappa: float, gamma: float) -> tuple[float, float]:
    """(h / gamma, kappa gamma).

    Raises:
        DomainViolationError: If gamma is outside (0, 1] or h / gamma >= 1.
    """
    if not 0 < gamma <= 1:
        raise DomainViolationError("gamma", f"must lie in (0, 1], got {gamma}")
    _require_positive("kappa", kappa)
    if h <= 0 or h / gamma >= 1:
        raise DomainViolationError("h/gamma", f"must lie in (0, 1), got {h / gamma}")
    return h / gamma, kappa * gamma


def gamma_choice(kappa: float, h: float, alpha: float, beta: float, c: float = 1.0) -> float:
    """gamma = kappa^(-(beta+1)/(alpha+beta+1)) h^(alpha/(alpha+beta+1)).

    At this gamma the rescaled kappa'^(beta+1) h'^(-alpha) equals 1, so the
    small-coupling precondition ``<= c`` holds after rescaling whenever c >= 1.

    Raises:
        DomainViolationError: On a nonpositive alpha + beta + 1, or if the
            precondition failed before rescaling and still fails after it.
    """
    _require_positive("kappa", kappa)
    _require_positive("h", h)
    denominator = alpha + beta + 1
    if denominator <= 0:
        raise DomainViolationError("alpha + beta + 1", f"must be positive, got {denominator}")
    gamma = kappa ** (-(beta + 1) / denominator) * h ** (alpha / denominator)
    state = ScaleState(h=h, kappa=kappa, gamma=min(gamma, 1.0), alpha=alpha, beta=beta)
    before = state.precondition_value()
    if before > c and gamma <= 1:
        after = state.precondition_value(rescaled=True)
        if after > c * (1 + 1e-9):
            raise DomainViolationError(
                "gamma", f"rescaled kappa^(beta+1) h^-alpha = {after:.6g} exceeds c = {c}"
            )
    return gamma


def general_step(alpha: Rational, beta: Rational) -> tuple[Fraction, Fraction]:
    """One step (alpha, beta) -> (-1/2 + 2 alpha / s, 2 (beta + 1) / s), s = alpha + beta + 1."""
    a, b = _rational(alpha), _rational(beta)
    s = a + b + 1
    if s <= 0:
        raise DomainViolationError("alpha + beta + 1", f"must be positive, got {s}")
    return Fraction(-1, 2) + 2 * a / s, 2 * (b + 1) / s


@dataclass(frozen=True)
class AlphaRecurrence:
    """Iterates of alpha' = -1/2 + (4/5) alpha with beta' = 3/2 - alpha'."""

    alpha0: Fraction
    alphas: list[Fraction]
    betas: list[Fraction]
    first_negative: int | None  # 1-based step where alpha < 0

    def as_floats(self) -> list[float]:
        return [float(a) for a in self.alphas]

    def summary(self) -> dict[str, object]:
        """JSON-friendly view with exact values as strings."""
        return {
            "alpha0": str(self.alpha0),
            "alphas": [str(a) for a in self.alphas],
            "betas": [str(b) for b in self.betas],
            "alphas_float": self.as_floats(),
            "first_negative": self.first_negative,
        }


def alpha_recurrence(alpha0: Rational, steps: int = 3) -> AlphaRecurrence:
    """Iterate the recurrence in exact rational arithmetic.

    Each step is ``general_step`` restricted to alpha + beta + 1 = 5/2; the
    two are cross-checked. Iterates approach the fixed point -5/2.
    """
    if steps < 1:
        raise DomainViolationError("steps", f"must be >= 1, got {steps}")
    alpha = _rational(alpha0)
    beta = RECURRENCE_SUM - 1 - alpha
    alphas, betas = [], []
    first_negative = None
    for step in range(1, steps + 1):
        next_alpha = Fraction(-1, 2) + Fraction(4, 5) * alpha
        next_beta = Fraction(3, 2) - next_alpha
        if general_step(alpha, beta) != (next_alpha, next_beta):
            raise ArithmeticError(f"recurrence left the alpha + beta + 1 = 5/2 line at step {step}")
        alpha, beta = next_alpha, next_beta
        alphas.append(alpha)
        betas.append(beta)
        if first_negative is None and alpha < 0:
            first_negative = step
    return AlphaRecurrence(
        alpha0=_rational(alpha0), alphas=alphas, betas=betas, first_negative=first_negative
    )


def kappa_star(h: float, epsilon: float = 1.0) -> float:
    """epsilon h^(-1/4) |log h|^(-3/4)."""
    _require_h(h)
    return epsilon * h**-0.25 * abs(math.log(h)) ** -0.75


def regime(kappa: float, h: float, epsilon: float = 1.0) -> RegimeTag:
    """Coupling regime of (h, kappa)."""
    if kappa <= 1:
        return RegimeTag.SUBCRITICAL
    if kappa * h > NEAR_CRITICAL_KAPPA_H:
        return RegimeTag.NEAR_CRITICAL
    if kappa <= kappa_star(h, epsilon):
        return RegimeTag.MODERATE
    return RegimeTag.LARGE


def predicted_remainder(
    kappa: float, h: float, C: float = 1.0, c: float = 1.0, epsilon: float = 1.0
) -> RemainderPrediction:
    """Smallest predicted remainder of E* - Weyl_1 at (h, kappa).

    For kappa <= 1 this is C h^-1. Above, the smaller of C kappa^2 h^-1 and,
    while kappa <= c/h, C h^-3 (kappa h)^(8/3) |log kappa h|^2.

    Raises:
        DomainViolationError: If h is outside (0, 1) or kappa outside (0, c/h].
    """
    _require_h(h)
    _require_positive("kappa", kappa)
    if kappa > c / h:
        raise DomainViolationError("kappa", f"must be <= c/h = {c / h:.6g}, got {kappa}")
    tag = regime(kappa, h, epsilon)
    if kappa <= 1:
        value, form = C / h, "unit"
    else:
        value, form = C * kappa**2 / h, "kappa_squared"
        kh = kappa * h
        log_corrected = C * h**-3 * kh ** (8 / 3) * math.log(kh) ** 2
        if log_corrected < value:
            value, form = log_corrected, "log_corrected"
    return RemainderPrediction(
        h=h,
        kappa=kappa,
        value=value,
        form=form,
        regime=tag,
        kappa_star=kappa_star(h, epsilon),
        C=C,
        c=c,
        epsilon=epsilon,
    )


def gamma_large_kappa(kappa: float, h: float, epsilon: float = 1.0) -> float:
    """epsilon kappa^(-4/3) h^(-1/3) |log kappa h|^(-1), for kappa*_h <= kappa < 1/h."""
    _require_h(h)
    _require_positive("kappa", kappa)
    if kappa * h >= 1:
        raise DomainViolationError("kappa*h", f"must be < 1, got {kappa * h}")
    return epsilon * kappa ** (-4 / 3) * h ** (-1 / 3) / abs(math.log(kappa * h))


def predicted_gradient_bound(kappa: float, h: float, C: float = 1.0) -> float:
    """Predicted ||dA||^2 scale: C kappa h for kappa <= 1, C kappa^3 h up to kappa = 1/h."""
    _require_h(h)
    _require_positive("kappa", kappa)
    if kappa <= 1:
        return C * kappa * h
    if kappa <= 1 / h:
        return C * kappa**3 * h
    raise DomainViolationError("kappa", f"must be <= 1/h = {1 / h:.6g}, got {kappa}")


def rescaled_remainder(h: float, gamma: float, C: float = 1.0) -> float:
    """C h^-1 gamma^-2: the remainder summed over a partition of scale gamma."""
    _require_positive("h", h)
    if not 0 < gamma <= 1:
        raise DomainViolationError("gamma", f"must lie in (0, 1], got {gamma}")
    return C / (h * gamma**2)
