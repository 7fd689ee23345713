"""Damped fixed-point minimization of the self-generated field energy."""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from paulilab.models.constants import LINE_SEARCH_TOLERANCE
from paulilab.models.domain.selfgen import HistoryEntry, MinimizerCheckpoint
from paulilab.models.settings import MinimizerOptions, SmoothingOptions, SolverOptions
from paulilab.services.fields.fields import ScalarField, VectorField
from paulilab.services.fields.spectral import (
    coulomb_project,
    coulomb_project_values,
    dealias_values,
    grad_energy,
)
from paulilab.services.selfgen.functional import (
    EnergyEvaluation,
    current_Phi,
    el_residual,
    evaluate,
    poisson_target,
    with_smoothed_energy,
)
from paulilab.services.spectra import SpectralResult

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class MinimizerState:
    """Field, spectrum and bookkeeping of a minimization.

    ``energy`` is always ``trace + field_energy / (kappa h^2)``.
    """

    A: VectorField
    spectrum: SpectralResult
    h: float
    kappa: float
    energy: float
    trace: float
    field_energy: float
    el_residual: float
    iteration: int
    mixing: float
    converged: bool = False
    restarted: bool = False
    smoothed_energy: float | None = None
    history: list[HistoryEntry] = field(default_factory=list)

    @classmethod
    def from_evaluation(
        cls,
        evaluation: EnergyEvaluation,
        h: float,
        kappa: float,
        residual: float,
        iteration: int,
        mixing: float,
        history: list[HistoryEntry],
    ) -> "MinimizerState":
        """Wrap an energy evaluation."""
        return cls(
            A=evaluation.A,
            spectrum=evaluation.spectrum,
            h=h,
            kappa=kappa,
            energy=evaluation.energy,
            trace=evaluation.trace,
            field_energy=evaluation.field_energy,
            el_residual=residual,
            iteration=iteration,
            mixing=mixing,
            smoothed_energy=evaluation.smoothed_energy,
            history=history,
        )

    def checkpoint(self) -> MinimizerCheckpoint:
        """Serializable scalars of the state."""
        return MinimizerCheckpoint(
            h=self.h,
            kappa=self.kappa,
            energy=self.energy,
            trace=self.trace,
            field_energy=self.field_energy,
            el_residual=self.el_residual,
            iteration=self.iteration,
            mixing=self.mixing,
            converged=self.converged,
            restarted=self.restarted,
            smoothed_energy=self.smoothed_energy,
            eigenvalue_count=self.spectrum.count,
            history=list(self.history),
        )


def initial_field(V: ScalarField, amplitude: float, seed: int) -> VectorField:
    """Small random divergence-free, zero-mean field with max |A| = amplitude."""
    grid = V.grid
    if amplitude == 0:
        return VectorField.zeros(grid)
    rng = np.random.default_rng(seed)
    values = dealias_values(grid, rng.standard_normal((3, *grid.dims)), fraction=1.0 / 3.0)
    values = coulomb_project_values(grid, values)
    peak = np.abs(values).max()
    if peak == 0:
        return VectorField.zeros(grid)
    return VectorField(grid, amplitude * values / peak)


def comparable(
    trial: EnergyEvaluation,
    current: EnergyEvaluation,
    regularize: bool,
    smooth: Callable[[EnergyEvaluation], EnergyEvaluation],
) -> tuple[float, float, EnergyEvaluation, EnergyEvaluation]:
    """Objective values of a line-search step, both taken from the same functional.

    Both sides use the smoothed functional when either spectrum is
    threshold-ambiguous or regularization is on, and E otherwise. The
    evaluations are returned with any smoothed value computed on the way.
    """
    ambiguous = trial.spectrum.threshold_ambiguous or current.spectrum.threshold_ambiguous
    if regularize or ambiguous:
        trial, current = smooth(trial), smooth(current)
        return trial.objective, current.objective, trial, current
    return trial.energy, current.energy, trial, current


def _snap(A: VectorField, threshold: float) -> VectorField:
    if not A.is_zero() and grad_energy(A) < threshold:
        return VectorField.zeros(A.grid)
    return A


def minimize(
    V: ScalarField,
    h: float,
    kappa: float,
    options: MinimizerOptions | None = None,
    solver: SolverOptions | None = None,
    smoothing: SmoothingOptions | None = None,
    seed: int = 0,
    initial: VectorField | None = None,
    on_iteration: Callable[[MinimizerState], None] | None = None,
) -> MinimizerState:
    """Minimize E(A) over divergence-free, zero-mean fields.

    Each step mixes A with the Coulomb-gauge Poisson solve of its own current,
    ``A <- (1 - beta) A + beta (kappa h^2 / 2) Laplacian^-1 Phi(A)``. A step
    that raises the energy by more than the line-search tolerance is rejected
    and beta halved; accepted steps grow beta again. The returned energy never
    exceeds E(0): if it would, the zero field is returned instead.

    Args:
        V: Potential.
        h: Semiclassical parameter.
        kappa: Coupling.
        options: Mixing, tolerance and iteration limits.
        solver: Eigensolver options.
        smoothing: Regularization used when the spectrum is threshold-ambiguous.
        seed: Seed of the initial field and the solver.
        initial: Starting field, e.g. from a checkpoint.
        on_iteration: Called with the state after every accepted step.

    Returns:
        The final state, ``converged`` set when the residual met the tolerance.
    """
    options = options or MinimizerOptions()
    solver = solver or SolverOptions()
    smoothing = smoothing or SmoothingOptions()
    grid = V.grid

    def run(A: VectorField, check: bool = False) -> EnergyEvaluation:
        return evaluate(
            A, V, h, kappa, solver, smoothing, seed, regularize=options.regularize, self_check=check
        )

    zero = run(VectorField.zeros(grid), check=True)
    if zero.spectrum.count == 0 and zero.spectrum.ambiguous_values.size == 0:
        logger.info("No negative spectrum at A=0 (h=%g); A=0 is stationary", h)
        state = MinimizerState.from_evaluation(zero, h, kappa, 0.0, 0, options.mixing, [])
        state.converged = True
        return state

    def smooth(evaluation: EnergyEvaluation) -> EnergyEvaluation:
        return with_smoothed_energy(evaluation, V, h, kappa, solver, smoothing, seed)

    if initial is not None:
        grid.require_same(initial.grid)
        A = coulomb_project(initial)
    else:
        A = initial_field(V, options.initial_amplitude, seed)
    current = run(A, check=True)
    beta = options.mixing
    history: list[HistoryEntry] = []
    converged = False
    residual = float("inf")
    iteration = 0

    def residual_of(evaluation: EnergyEvaluation) -> float:
        phi = current_Phi(evaluation.spectrum, evaluation.A, h)
        return el_residual(evaluation.A, phi, kappa, h, options.residual_floor)

    for iteration in range(options.max_iterations):
        phi = current_Phi(current.spectrum, current.A, h)
        residual = el_residual(current.A, phi, kappa, h, options.residual_floor)
        history.append(
            HistoryEntry(iteration=iteration, energy=current.energy, residual=residual, mixing=beta)
        )
        logger.debug(
            "iter %d: E=%.10g residual=%.3e beta=%.3g", iteration, current.energy, residual, beta
        )
        if residual <= options.tolerance:
            converged = True
            break

        target = poisson_target(phi, kappa, h, options.dealias)
        accepted = False
        while beta >= options.min_mixing:
            candidate = VectorField(grid, (1 - beta) * current.A.values + beta * target.values)
            trial = run(_snap(candidate, options.zero_field_threshold))
            new, old, trial, current = comparable(trial, current, options.regularize, smooth)
            if new <= old + LINE_SEARCH_TOLERANCE:
                current = trial
                accepted = True
                beta = min(1.0, beta * options.mixing_growth)
                break
            logger.debug("Rejected step: %.10g > %.10g, halving beta", new, old)
            beta /= 2
        if not accepted:
            logger.info(
                "Line search stalled at iteration %d (beta < %g)", iteration, options.min_mixing
            )
            break
        if on_iteration is not None:
            snapshot = MinimizerState.from_evaluation(
                current, h, kappa, residual, iteration, beta, history
            )
            on_iteration(snapshot)

    if not converged:
        residual = residual_of(current)
        converged = residual <= options.tolerance
    state = MinimizerState.from_evaluation(current, h, kappa, residual, iteration, beta, history)
    state.converged = converged
    if state.energy > zero.energy + LINE_SEARCH_TOLERANCE:
        logger.warning(
            "Final energy %.10g exceeds E(0)=%.10g; returning A=0", state.energy, zero.energy
        )
        zero_residual = residual_of(zero)
        state = MinimizerState.from_evaluation(
            zero, h, kappa, zero_residual, iteration, beta, history
        )
        state.converged = zero_residual <= options.tolerance
        state.restarted = True
    logger.info(
        "Minimization h=%g kappa=%g: E=%.10g residual=%.3e after %d iterations (%s)",
        h,
        kappa,
        state.energy,
        state.el_residual,
        state.iteration,
        "converged" if state.converged else "not converged",
    )
    return state
