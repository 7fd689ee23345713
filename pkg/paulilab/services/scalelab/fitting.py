"""Empirical remainder exponents from sweep records."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy.stats import linregress

from paulilab.exceptions import InsufficientDataError
from paulilab.models.domain.scaling import FitReport, FitResult
from paulilab.models.domain.sweep import SweepRecord
from paulilab.models.enums import FitTarget
from paulilab.models.settings import FitOptions

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 3


def target_error(record: SweepRecord, target: FitTarget) -> float | None:
    """The error quantity of one record, or None when the record lacks it."""
    match target:
        case FitTarget.TRACE:
            return abs(record.trace_free - record.weyl1)
        case FitTarget.ENERGY:
            return abs(record.energy - record.weyl1)
        case FitTarget.ENERGY_CORRECTED:
            return abs(record.energy - record.weyl1_corr)
        case FitTarget.LOCALIZED:
            if record.localized is None:
                return None
            return abs(record.localized.trace - record.localized.weyl)
        case FitTarget.LOCALIZED_CORRECTED:
            if record.localized is None or record.localized_weyl_corrected is None:
                return None
            return abs(record.localized.trace - record.localized_weyl_corrected)


def fit_power_law(h_values: Sequence[float], errors: Sequence[float]) -> FitResult:
    """Least-squares fit of log error = log constant - p log h.

    Raises:
        InsufficientDataError: With fewer than three distinct h carrying a
            positive finite error.
    """
    h = np.asarray(h_values, dtype=float)
    e = np.asarray(errors, dtype=float)
    usable = (h > 0) & np.isfinite(e) & (e > 0)
    h, e = h[usable], e[usable]
    distinct = np.unique(h).size
    if distinct < MIN_FIT_POINTS:
        raise InsufficientDataError(distinct, MIN_FIT_POINTS)
    x, y = np.log(h), np.log(e)
    line = linregress(x, y)
    residual = float(np.sqrt(np.mean((y - (line.intercept + line.slope * x)) ** 2)))
    return FitResult(
        exponent=-float(line.slope),
        constant=float(np.exp(line.intercept)),
        residual=residual,
        points=int(h.size),
        h_values=sorted(h.tolist()),
    )


def fit_exponent(
    records: Sequence[SweepRecord],
    target: FitTarget = FitTarget.TRACE,
    options: FitOptions | None = None,
    kappa: float | None = None,
) -> FitReport:
    """Fit the remainder exponent of ``target`` over the records.

    When the fit residual exceeds the threshold, the largest-h points are
    dropped and the data refitted; both fits are reported.

    Args:
        records: Sweep records, one per (h, kappa).
        target: Error quantity to fit.
        options: Residual threshold and number of points to drop.
        kappa: Restrict to records at this coupling.

    Returns:
        The fit report.

    Raises:
        InsufficientDataError: With fewer than three distinct usable h.
    """
    options = options or FitOptions()
    selected = [r for r in records if kappa is None or np.isclose(r.kappa, kappa)]
    pairs = [(r.h, err) for r in selected if (err := target_error(r, target)) is not None]
    if not pairs:
        raise InsufficientDataError(0, MIN_FIT_POINTS)
    h_values, errors = zip(*pairs, strict=True)
    full = fit_power_law(h_values, errors)
    logger.info(
        "Fit %s: p=%.4f C=%.4g residual=%.3g (%d points)",
        target.value,
        full.exponent,
        full.constant,
        full.residual,
        full.points,
    )

    trimmed, dropped = None, []
    if full.residual > options.residual_threshold and options.drop_largest > 0:
        largest = sorted(set(h_values), reverse=True)[: options.drop_largest]
        kept = [(h, e) for h, e in pairs if h not in largest]
        if len({h for h, _ in kept}) >= MIN_FIT_POINTS:
            trimmed = fit_power_law([h for h, _ in kept], [e for _, e in kept])
            dropped = sorted(largest)
            logger.info(
                "Refit without h=%s: p=%.4f residual=%.3g",
                dropped,
                trimmed.exponent,
                trimmed.residual,
            )
        else:
            logger.warning(
                "Fit residual %.3g is above %.3g but too few points remain to refit",
                full.residual,
                options.residual_threshold,
            )
    return FitReport(target=target, kappa=kappa, full=full, trimmed=trimmed, dropped=dropped)
