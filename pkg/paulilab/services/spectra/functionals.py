"""Trace functionals and spectral-projector densities of a SpectralResult."""

from dataclasses import dataclass

import numpy as np

from paulilab.exceptions import IncompleteSpectrumError
from paulilab.services.fields.fields import ScalarField
from paulilab.services.spectra.result import SmoothingSpec, SpectralResult


@dataclass(frozen=True)
class TraceValue:
    """Tr^- with eigenvalues near 0 excluded and included."""

    exclusion: float
    inclusion: float
    ambiguous: bool


def _require_complete(S: SpectralResult, level: float) -> None:
    if not S.usable or S.threshold < level:
        raise IncompleteSpectrumError(level)


def trace_minus(S: SpectralResult) -> float:
    """Sum of the negative eigenvalues.

    Raises:
        IncompleteSpectrumError: If S is flagged unusable or stops below 0.
    """
    _require_complete(S, 0.0)
    return float(np.sum(S.eigenvalues[S.eigenvalues < 0.0]))


def trace_minus_bounds(S: SpectralResult) -> TraceValue:
    """Tr^- reported both without and with the eigenvalues flagged near zero."""
    exclusion = trace_minus(S)
    near_zero = S.ambiguous_values[S.ambiguous_values < 0.0] if S.threshold == 0.0 else np.zeros(0)
    inclusion = exclusion + float(np.sum(near_zero))
    return TraceValue(exclusion=exclusion, inclusion=inclusion, ambiguous=S.threshold_ambiguous)


def weighted_sum(S: SpectralResult, weight: np.ndarray) -> float:
    """``sum_{lambda_n < 0} lambda_n int |u_n|^2 w``."""
    negative = np.flatnonzero(S.eigenvalues < 0.0)
    if negative.size == 0:
        return 0.0
    site_weights = S.site_weights()[negative]
    # Euclidean vectors: |v|^2 = |u|^2 dV, so no cell volume appears
    overlaps = np.tensordot(site_weights, weight, axes=3)
    return float(np.dot(S.eigenvalues[negative], overlaps))


def density_e1(S: SpectralResult, psi2: ScalarField) -> float:
    """``int e_1(x, x, 0) psi^2(x) dx`` from the negative eigenpairs.

    Args:
        S: Spectrum complete below 0.
        psi2: Weight, usually the square of a cutoff.

    Returns:
        The weighted sum; equals trace_minus(S) for psi2 = 1.
    """
    _require_complete(S, 0.0)
    S.grid.require_same(psi2.grid)
    return weighted_sum(S, psi2.values)


def e1_diagonal(S: SpectralResult) -> ScalarField:
    """The field ``e_1(x, x, 0) = sum_{lambda_n < 0} lambda_n |u_n(x)|^2``."""
    _require_complete(S, 0.0)
    negative = np.flatnonzero(S.eigenvalues < 0.0)
    if negative.size == 0:
        return ScalarField.constant(S.grid, 0.0)
    weights = S.site_weights()[negative]
    values = np.tensordot(S.eigenvalues[negative], weights, axes=1) / S.grid.cell_volume
    return ScalarField(S.grid, values)


def diag_density(S: SpectralResult, tau: float) -> ScalarField:
    """Spin-traced ``e(x, x, tau) = sum_{lambda_n <= tau} |u_n(x)|^2``.

    Raises:
        IncompleteSpectrumError: If S does not reach tau.
    """
    _require_complete(S, tau)
    selected = S.below(tau)
    if selected.size == 0:
        return ScalarField.constant(S.grid, 0.0)
    values = S.site_weights()[selected].sum(axis=0) / S.grid.cell_volume
    return ScalarField(S.grid, values)


def smoothed_terms(eigenvalues: np.ndarray, spec: SmoothingSpec) -> np.ndarray:
    """Per-eigenvalue summands ``phi(l/L)(l - L) + (1 - phi(l/L)) l 1(l < 0)``."""
    lam = np.asarray(eigenvalues, dtype=float)
    phi = spec.profile(lam / spec.scale)
    return phi * (lam - spec.scale) + (1.0 - phi) * np.where(lam < 0.0, lam, 0.0)


def smoothed_trace(S: SpectralResult, spec: SmoothingSpec) -> float:
    """Energy-regularized trace, never above trace_minus(S).

    Raises:
        IncompleteSpectrumError: If S does not reach the smoothing scale L.
    """
    _require_complete(S, spec.scale)
    window = S.eigenvalues[S.eigenvalues <= spec.scale]
    return float(np.sum(smoothed_terms(window, spec)))
