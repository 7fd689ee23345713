"""Rescaling calculus, predicted remainders and exponent fitting."""

from paulilab.services.scalelab.calculus import (
    ALPHA_FIXED_POINT,
    AlphaRecurrence,
    alpha_recurrence,
    gamma_choice,
    gamma_large_kappa,
    general_step,
    kappa_star,
    predicted_gradient_bound,
    predicted_remainder,
    regime,
    rescale,
    rescaled_remainder,
)
from paulilab.services.scalelab.fitting import fit_exponent, fit_power_law, target_error

__all__ = [
    # Calculus
    "ALPHA_FIXED_POINT",
    "AlphaRecurrence",
    "alpha_recurrence",
    "gamma_choice",
    "gamma_large_kappa",
    "general_step",
    "kappa_star",
    "predicted_gradient_bound",
    "predicted_remainder",
    "regime",
    "rescale",
    "rescaled_remainder",
    # Fitting
    "fit_exponent",
    "fit_power_law",
    "target_error",
]
