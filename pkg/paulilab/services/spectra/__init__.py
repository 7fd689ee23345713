"""Negative spectrum, trace functionals and spectral-projector densities."""

from paulilab.services.spectra.functionals import (
    TraceValue,
    density_e1,
    diag_density,
    e1_diagonal,
    smoothed_trace,
    trace_minus,
    trace_minus_bounds,
)
from paulilab.services.spectra.result import SmoothingSpec, SpectralResult
from paulilab.services.spectra.solvers import dense_spectrum, negative_spectrum

__all__ = [
    "SmoothingSpec",
    "SpectralResult",
    "TraceValue",
    "dense_spectrum",
    "density_e1",
    "diag_density",
    "e1_diagonal",
    "negative_spectrum",
    "smoothed_trace",
    "trace_minus",
    "trace_minus_bounds",
]
