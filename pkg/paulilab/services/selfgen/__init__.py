"""Energy functional, Euler-Lagrange current, minimization and a-priori bounds."""

from paulilab.services.selfgen.functional import (
    EnergyEvaluation,
    current_Phi,
    el_residual,
    energy,
    energy_localized,
    energy_lower_localized,
    energy_regularized,
    evaluate,
    field_term,
    poisson_target,
    with_smoothed_energy,
)
from paulilab.services.selfgen.inequalities import (
    diagnostics,
    holder_seminorm,
    inequality_suite,
    local_gradient_norm,
    lower_bound_family,
    predicted_sup_bound,
    sobolev_ratio,
)
from paulilab.services.selfgen.minimizer import MinimizerState, initial_field, minimize

__all__ = [
    "EnergyEvaluation",
    "MinimizerState",
    "current_Phi",
    "diagnostics",
    "el_residual",
    "energy",
    "energy_localized",
    "energy_lower_localized",
    "energy_regularized",
    "evaluate",
    "field_term",
    "holder_seminorm",
    "inequality_suite",
    "initial_field",
    "local_gradient_norm",
    "lower_bound_family",
    "minimize",
    "poisson_target",
    "predicted_sup_bound",
    "sobolev_ratio",
    "with_smoothed_energy",
]
