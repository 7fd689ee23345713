"""Assembly and application of the discrete Pauli operator."""

from paulilab.services.pauli.matrices import SIGMA, apply_sigma, sigma_dot
from paulilab.services.pauli.operator import (
    GaugeTransform,
    PauliOperator,
    assemble,
    covariant_derivative,
    gauge_transform,
)

__all__ = [
    "SIGMA",
    "GaugeTransform",
    "PauliOperator",
    "apply_sigma",
    "assemble",
    "covariant_derivative",
    "gauge_transform",
    "sigma_dot",
]
