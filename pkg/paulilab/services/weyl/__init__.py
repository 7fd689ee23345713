"""Weyl expressions: closed forms, tau quadrature and gradient corrections."""

from paulilab.services.weyl.expressions import (
    WeylReport,
    weyl1,
    weyl1_corrected_local,
    weyl1_local,
    weyl1_tau_integral,
    weyl_alpha_beta,
    weyl_corrected,
    weyl_report,
    weyl_tau,
)

__all__ = [
    "WeylReport",
    "weyl1",
    "weyl1_corrected_local",
    "weyl1_local",
    "weyl1_tau_integral",
    "weyl_alpha_beta",
    "weyl_corrected",
    "weyl_report",
    "weyl_tau",
]
