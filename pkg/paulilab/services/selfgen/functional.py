"""The energy E(A) = Tr^- H_{A,V} + (kappa h^2)^-1 int |dA|^2 and its first variation.

Phi is defined so that the first variation of the trace term is
``int Phi . delta A``; stationarity of E is then ``(2 / kappa h^2) Laplacian A = Phi``
on the divergence-free, zero-mean subspace.
"""

import logging
from dataclasses import dataclass, replace

import numpy as np

from paulilab.core.protocols import HermitianOperator
from paulilab.exceptions import CurrentConsistencyError, IncompleteSpectrumError
from paulilab.models.constants import CURRENT_IMAG_TOLERANCE
from paulilab.models.settings import SmoothingOptions, SolverOptions
from paulilab.services.fields.fields import ScalarField, VectorField
from paulilab.services.fields.spectral import (
    coulomb_project_values,
    dealias_values,
    fft3,
    grad_energy,
    ifft3,
    inverse_laplacian_values,
    laplacian_values,
)
from paulilab.services.localize import localized_trace_minus
from paulilab.services.pauli import assemble
from paulilab.services.pauli.matrices import apply_sigma, sigma_dot
from paulilab.services.spectra import (
    SmoothingSpec,
    SpectralResult,
    density_e1,
    negative_spectrum,
    smoothed_trace,
    trace_minus,
)

logger = logging.getLogger(__name__)

CURRENT_BATCH = 32


def field_term(A: VectorField, h: float, kappa: float) -> float:
    """``(kappa h^2)^-1 int |dA|^2``."""
    return grad_energy(A) / (kappa * h**2)


def smoothing_spec(h: float, smoothing: SmoothingOptions) -> SmoothingSpec:
    """Window L from the options, 10 h^2 when unset."""
    return SmoothingSpec(smoothing.scale if smoothing.scale is not None else 10.0 * h**2)


@dataclass(frozen=True, eq=False)
class EnergyEvaluation:
    """Energy of one field with the spectrum it came from.

    ``smoothed_energy`` is set when the spectrum is threshold-ambiguous or the
    regularized functional was requested; it then serves as the objective.
    """

    A: VectorField
    spectrum: SpectralResult
    trace: float
    field_energy: float
    energy: float
    smoothed_energy: float | None = None

    @property
    def objective(self) -> float:
        """Value the minimizer descends on."""
        return self.energy if self.smoothed_energy is None else self.smoothed_energy


def _smoothed_energy(
    H: HermitianOperator,
    G: float,
    h: float,
    kappa: float,
    solver: SolverOptions,
    smoothing: SmoothingOptions,
    seed: int,
) -> float:
    spec = smoothing_spec(h, smoothing)
    S_L = negative_spectrum(H, spec.scale, solver.kind, solver, seed)
    weight = smoothing.rho + smoothing.k_inverse
    return smoothed_trace(S_L, spec) + weight * G / (kappa * h**2)


def evaluate(
    A: VectorField,
    V: ScalarField,
    h: float,
    kappa: float,
    solver: SolverOptions | None = None,
    smoothing: SmoothingOptions | None = None,
    seed: int = 0,
    regularize: bool = False,
    self_check: bool = True,
) -> EnergyEvaluation:
    """Solve H_{A,V} below 0 and evaluate the energy.

    Args:
        A: Vector potential.
        V: Potential.
        h: Semiclassical parameter.
        kappa: Coupling.
        solver: Eigensolver options.
        smoothing: Window and field weights of the regularized functional.
        seed: Solver seed.
        regularize: Always evaluate the smoothed functional.
        self_check: Run operator self-checks.

    Returns:
        The evaluation.
    """
    solver = solver or SolverOptions()
    smoothing = smoothing or SmoothingOptions()
    H = assemble(V.grid, A, V, h, self_check=self_check, seed=seed)
    S = negative_spectrum(H, 0.0, solver.kind, solver, seed)
    trace = trace_minus(S)
    G = grad_energy(A)
    energy = trace + G / (kappa * h**2)

    smoothed_energy = None
    if regularize or S.threshold_ambiguous:
        smoothed_energy = _smoothed_energy(H, G, h, kappa, solver, smoothing, seed)
        if S.threshold_ambiguous:
            logger.info("Threshold-ambiguous spectrum at h=%g; using the smoothed trace", h)
    return EnergyEvaluation(
        A=A,
        spectrum=S,
        trace=trace,
        field_energy=G,
        energy=energy,
        smoothed_energy=smoothed_energy,
    )


def with_smoothed_energy(
    evaluation: EnergyEvaluation,
    V: ScalarField,
    h: float,
    kappa: float,
    solver: SolverOptions | None = None,
    smoothing: SmoothingOptions | None = None,
    seed: int = 0,
) -> EnergyEvaluation:
    """The same evaluation with ``smoothed_energy`` filled in.

    Evaluations that already carry the smoothed value are returned unchanged.
    """
    if evaluation.smoothed_energy is not None:
        return evaluation
    solver = solver or SolverOptions()
    smoothing = smoothing or SmoothingOptions()
    H = assemble(V.grid, evaluation.A, V, h, self_check=False, seed=seed)
    smoothed = _smoothed_energy(H, evaluation.field_energy, h, kappa, solver, smoothing, seed)
    return replace(evaluation, smoothed_energy=smoothed)


def energy(
    A: VectorField,
    V: ScalarField,
    h: float,
    kappa: float,
    solver: SolverOptions | None = None,
    seed: int = 0,
) -> float:
    """``Tr^- H_{A,V} + (kappa h^2)^-1 int |dA|^2``."""
    return evaluate(A, V, h, kappa, solver, seed=seed).energy


def energy_localized(
    A: VectorField,
    V: ScalarField,
    h: float,
    kappa: float,
    psi: ScalarField,
    solver: SolverOptions | None = None,
    seed: int = 0,
) -> float:
    """``Tr^-(psi H psi) + (kappa h^2)^-1 int |dA|^2``."""
    solver = solver or SolverOptions()
    H = assemble(V.grid, A, V, h, seed=seed)
    return localized_trace_minus(H, psi, solver.kind, solver, seed) + field_term(A, h, kappa)


def energy_lower_localized(
    S: SpectralResult, A: VectorField, h: float, kappa: float, psi: ScalarField
) -> float:
    """``int e_1(x, x, 0) psi^2 + (kappa h^2)^-1 int |dA|^2``, never above energy_localized."""
    psi2 = ScalarField(psi.grid, psi.values**2)
    return density_e1(S, psi2) + field_term(A, h, kappa)


def energy_regularized(
    A: VectorField,
    V: ScalarField,
    h: float,
    kappa: float,
    smoothing: SmoothingOptions | None = None,
    solver: SolverOptions | None = None,
    seed: int = 0,
) -> float:
    """Smoothed trace plus ``(rho + K^-1)(kappa h^2)^-1 int |dA|^2``."""
    return evaluate(A, V, h, kappa, solver, smoothing, seed, regularize=True).objective


def current_Phi(S: SpectralResult, A: VectorField, h: float) -> VectorField:
    """The current ``Phi_j = -sum_n [u_n^* sigma_j (Q u_n) + (Q u_n)^* sigma_j u_n]``.

    Q is ``(hD - A).sigma`` and the sum runs over the negative eigenpairs of S;
    summing whole eigenspaces makes the result independent of the basis chosen
    inside degenerate clusters.

    Args:
        S: Spectrum of H_{A,V}, complete below 0.
        A: The vector potential of that operator.
        h: Semiclassical parameter.

    Returns:
        Phi as a real vector field.

    Raises:
        IncompleteSpectrumError: If S is unusable or stops below 0.
        CurrentConsistencyError: If the imaginary residue exceeds the tolerance.
    """
    if not S.usable or S.threshold < 0.0:
        raise IncompleteSpectrumError(0.0)
    grid = A.grid
    grid.require_same(S.grid)
    negative = np.flatnonzero(S.eigenvalues < 0.0)
    phi = np.zeros((3, *grid.dims), dtype=np.complex128)
    hk = [h * k for k in grid.derivative_wavenumbers]
    for start in range(0, negative.size, CURRENT_BATCH):
        u = S.spinor_array(negative[start : start + CURRENT_BATCH])
        coefficients = fft3(u)
        qu = sigma_dot([ifft3(k * coefficients) - a * u for k, a in zip(hk, A.values, strict=True)])
        for j in range(3):
            first = np.sum(np.conj(u) * apply_sigma(j, qu), axis=(0, 1))
            second = np.sum(np.conj(qu) * apply_sigma(j, u), axis=(0, 1))
            phi[j] -= first + second

    scale = max(float(np.abs(phi.real).max(initial=0.0)), 1.0)
    imaginary = float(np.abs(phi.imag).max(initial=0.0))
    if imaginary > CURRENT_IMAG_TOLERANCE * scale:
        raise CurrentConsistencyError(imaginary, CURRENT_IMAG_TOLERANCE * scale)
    return VectorField(grid, phi.real)


def el_residual(
    A: VectorField, Phi: VectorField, kappa: float, h: float, floor: float = 1e-8
) -> float:
    """Relative residual of ``(2 / kappa h^2) Laplacian A = Phi`` in Coulomb gauge.

    The difference is projected onto divergence-free, zero-mean fields, where
    the equation is posed.
    """
    A.grid.require_same(Phi.grid)
    difference = 2.0 / (kappa * h**2) * laplacian_values(A.grid, A.values) - Phi.values
    projected = VectorField(A.grid, coulomb_project_values(A.grid, difference))
    return projected.norm() / max(Phi.norm(), floor)


def poisson_target(Phi: VectorField, kappa: float, h: float, dealias: bool = True) -> VectorField:
    """Coulomb-gauge solution of ``(2 / kappa h^2) Laplacian A = Phi``."""
    grid = Phi.grid
    values = 0.5 * kappa * h**2 * inverse_laplacian_values(grid, Phi.values)
    values = coulomb_project_values(grid, values)
    if dealias:
        values = dealias_values(grid, values)
    return VectorField(grid, values)
