"""Runs the (h, kappa) grid of an experiment and persists one record per point."""

import asyncio
import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

import numpy as np

from paulilab.exceptions import DomainViolationError, OutputExistsError, PaulilabError
from paulilab.models.domain.scaling import RemainderPrediction
from paulilab.models.domain.sweep import SweepPlan, SweepPoint, SweepRecord
from paulilab.models.settings import ExperimentConfig
from paulilab.repositories.json_state import JsonStateRepository
from paulilab.repositories.sweep_state import SweepRepository
from paulilab.services.fields import (
    ScalarField,
    VectorField,
    build_grid,
    make_cutoff,
    sample_potential,
)
from paulilab.services.localize import localized_energy
from paulilab.services.pauli import assemble
from paulilab.services.scalelab import predicted_remainder
from paulilab.services.selfgen import MinimizerState, diagnostics, inequality_suite, minimize
from paulilab.services.spectra import negative_spectrum, trace_minus
from paulilab.services.weyl import weyl1, weyl1_corrected_local, weyl1_local, weyl_corrected

logger = logging.getLogger(__name__)


class PointStatus(str, Enum):
    """Outcome of one sweep point."""

    COMPLETED = "completed"
    SKIPPED = "skipped"
    FAILED = "failed"


def point_key(config: ExperimentConfig, h: float, kappa: float, seed: int) -> str:
    """Content hash of the configuration and the point; the output directory is excluded."""
    return JsonStateRepository.compute_hash(
        config.model_dump(mode="json", exclude={"output_dir"}),
        {"h": h, "kappa": kappa, "seed": seed},
    )


def build_plan(config: ExperimentConfig) -> SweepPlan:
    """Every point of the experiment with its derived seed and key."""
    points = [
        SweepPoint(h=h, kappa=kappa, seed=seed, key=point_key(config, h, kappa, seed))
        for seed, (h, kappa) in enumerate(config.points(), start=config.seed)
    ]
    return SweepPlan(config=config, points=points)


def sample_experiment_potential(config: ExperimentConfig) -> ScalarField:
    """The configured potential on the configured grid."""
    grid = build_grid(config.grid.dims, config.grid.box)
    return sample_potential(
        config.potential.preset, config.potential.params, grid, config.potential.expression
    )


def point_prediction(
    config: ExperimentConfig, h: float, kappa: float
) -> RemainderPrediction | None:
    """Predicted remainder at one point, or None outside the admissible range."""
    scale = config.scale
    try:
        return predicted_remainder(kappa, h, C=scale.C, c=scale.c, epsilon=scale.epsilon)
    except DomainViolationError as e:
        logger.debug("No remainder prediction at h=%g kappa=%g: %s", h, kappa, e)
        return None


def run_point(
    config: ExperimentConfig, point: SweepPoint, repository: SweepRepository | None = None
) -> SweepRecord:
    """Minimize, then measure everything recorded at one point.

    With a repository, minimizer checkpoints are written after every accepted
    step and an existing checkpoint seeds the minimization.

    Args:
        config: Experiment configuration.
        point: The point, with its seed and key.
        repository: Where checkpoints and the final field go.

    Returns:
        The record; the caller persists it.

    Raises:
        PaulilabError: On any numerical failure.
    """
    started = datetime.now()
    h, kappa, seed = point.h, point.kappa, point.seed
    V = sample_experiment_potential(config)
    grid = V.grid
    scale = config.scale

    H0 = assemble(grid, VectorField.zeros(grid), V, h, seed=seed)
    free = negative_spectrum(H0, 0.0, config.solver.kind, config.solver, seed)

    initial = None
    on_iteration: Callable[[MinimizerState], None] | None = None
    if repository is not None:
        stored = repository.load_checkpoint(point.key)
        if stored is not None and isinstance(stored[1], VectorField):
            logger.info("Resuming h=%g kappa=%g from iteration %d", h, kappa, stored[0].iteration)
            initial = stored[1]

        def save_checkpoint(state: MinimizerState) -> None:
            repository.save_checkpoint(point.key, state.checkpoint(), state.A)

        on_iteration = save_checkpoint

    state = minimize(
        V,
        h,
        kappa,
        config.minimizer,
        config.solver,
        config.smoothing,
        seed=seed,
        initial=initial,
        on_iteration=on_iteration,
    )
    A, S = state.A, state.spectrum
    M = scale.M_ref
    if M is not None and M < 1.0 / h:
        logger.warning("M_ref=%g is below 1/h=%g at h=%g; using 1/h", M, 1.0 / h, h)
        M = None

    localized = None
    localized_corr = None
    if config.cutoff.enabled:
        options = config.cutoff
        cutoff = make_cutoff(grid, options.center, options.radius, options.taper, options.epsilon)
        H = assemble(grid, A, V, h, seed=seed)
        localized = localized_energy(
            H, S, cutoff.psi, weyl1_local(V, h), config.solver.kind, config.solver, seed
        )
        corrected = weyl1_corrected_local(V, h, scale.kappa1, scale.kappa2)
        localized_corr = grid.integrate(corrected.values * cutoff.psi.values**2)

    if repository is not None:
        repository.save_field(point.key, "A", A)

    record = SweepRecord(
        h=h,
        kappa=kappa,
        seed=seed,
        key=point.key,
        trace_free=trace_minus(free),
        trace_minus=state.trace,
        energy=state.energy,
        weyl1=weyl1(V, h),
        weyl1_corr=weyl_corrected(V, h, scale.kappa1, scale.kappa2).value,
        kappa1=scale.kappa1,
        kappa2=scale.kappa2,
        field_energy=state.field_energy,
        el_residual=state.el_residual,
        converged=state.converged,
        restarted=state.restarted,
        iterations=state.iteration,
        diagnostics=diagnostics(A, h, kappa, M),
        inequalities=inequality_suite(S, A, V, h, kappa, M),
        localized=localized,
        localized_weyl_corrected=localized_corr,
        prediction=point_prediction(config, h, kappa),
        started_at=started,
        finished_at=datetime.now(),
    )
    logger.info(
        "Point h=%g kappa=%g: E=%.8g Weyl1=%.8g residual=%.2e (%s)",
        h,
        kappa,
        record.energy,
        record.weyl1,
        record.el_residual,
        "converged" if record.converged else "not converged",
    )
    return record


@dataclass
class SweepSummary:
    """What a sweep run did."""

    plan: SweepPlan
    completed: list[SweepRecord] = field(default_factory=list)
    skipped: list[SweepPoint] = field(default_factory=list)
    failed: list[tuple[SweepPoint, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when no point failed."""
        return not self.failed


type ProgressCallback = Callable[[SweepPoint, PointStatus], None]


async def run_sweep_async(
    config: ExperimentConfig,
    repository: SweepRepository,
    workers: int = 1,
    resume: bool = False,
    on_progress: ProgressCallback | None = None,
) -> SweepSummary:
    """Run every point of the plan, at most ``workers`` at a time.

    Points run in worker threads; records and index rows are written from the
    event loop only. Points that already have a record are skipped.

    Args:
        config: Experiment configuration.
        repository: Output directory of the sweep.
        workers: Concurrent points.
        resume: Allow a non-empty output directory.
        on_progress: Called once per point with its outcome.

    Returns:
        The summary.

    Raises:
        OutputExistsError: If the directory is not empty and resume is False.
    """
    if not resume and not repository.is_empty():
        raise OutputExistsError(str(repository.root))
    plan = build_plan(config)
    repository.save_plan(plan)
    summary = SweepSummary(plan=plan)
    semaphore = asyncio.Semaphore(max(1, workers))

    def notify(point: SweepPoint, status: PointStatus) -> None:
        if on_progress is not None:
            on_progress(point, status)

    async def process(point: SweepPoint) -> None:
        if repository.has_record(point.key):
            logger.info("Skipping completed point h=%g kappa=%g", point.h, point.kappa)
            summary.skipped.append(point)
            notify(point, PointStatus.SKIPPED)
            return
        async with semaphore:
            try:
                record = await asyncio.to_thread(run_point, config, point, repository)
            except (PaulilabError, np.linalg.LinAlgError) as e:
                logger.error("Point h=%g kappa=%g failed: %s", point.h, point.kappa, e)
                summary.failed.append((point, str(e)))
                notify(point, PointStatus.FAILED)
                return
            except Exception as e:
                logger.exception("Point h=%g kappa=%g failed unexpectedly", point.h, point.kappa)
                summary.failed.append((point, f"{type(e).__name__}: {e}"))
                notify(point, PointStatus.FAILED)
                return
        repository.save_record(record)
        summary.completed.append(record)
        notify(point, PointStatus.COMPLETED)

    await asyncio.gather(*(process(point) for point in plan.points))
    logger.info(
        "Sweep finished: %d completed, %d skipped, %d failed",
        len(summary.completed),
        len(summary.skipped),
        len(summary.failed),
    )
    return summary


def run_sweep(
    config: ExperimentConfig,
    repository: SweepRepository,
    workers: int = 1,
    resume: bool = False,
    on_progress: ProgressCallback | None = None,
) -> SweepSummary:
    """Synchronous entry point of ``run_sweep_async``."""
    return asyncio.run(run_sweep_async(config, repository, workers, resume, on_progress))
