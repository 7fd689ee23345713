"""Monte-Carlo estimate of the measure of rho-periodic points on an energy shell."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm

from paulilab.exceptions import EmptyShellError, IntegratorInstabilityError
from paulilab.models.domain.dynamics import PeriodicMeasure, SampleOutcome
from paulilab.models.enums import Integrator, Preset
from paulilab.models.settings import DynamicsOptions
from paulilab.services.dynamics.flow import (
    INSTABILITY_DRIFT,
    hamiltonian,
    relative_drift,
    step_state,
)
from paulilab.services.fields.potentials import AnalyticPotential, make_potential

logger = logging.getLogger(__name__)

MAX_REJECTION_ROUNDS = 1000
CONFIDENCE = 0.95


@dataclass(frozen=True, eq=False)
class FlowConfig:
    """Potential and sampling parameters of a periodic-measure estimate."""

    potential: AnalyticPotential
    tau: float = 0.0
    step: float = 1e-3
    horizon: float = 4.0
    rho: float = 1e-2
    samples: int = 200
    seed: int = 0
    region: float = 1.5
    integrator: Integrator = Integrator.YOSHIDA4

    def __post_init__(self) -> None:
        if self.step > self.rho / 10:
            raise ValueError(f"step {self.step:g} must be <= rho/10 = {self.rho / 10:g}")
        if self.samples < 100:
            raise ValueError(f"samples must be >= 100, got {self.samples}")

    @classmethod
    def from_options(cls, options: DynamicsOptions) -> "FlowConfig":
        """Build from configuration; the anharmonic preset takes ``strength``."""
        params = dict(options.params)
        if options.preset == Preset.ANHARMONIC:
            params.setdefault("strength", options.strength)
        return cls(
            potential=make_potential(options.preset, params),
            tau=options.tau,
            step=options.step,
            horizon=options.horizon,
            rho=options.rho,
            samples=options.samples,
            seed=options.seed,
            region=options.region,
            integrator=options.integrator,
        )

    def with_limits(self, horizon: float, rho: float) -> "FlowConfig":
        """Same sampling with another (T, rho); the step shrinks if needed."""
        return FlowConfig(
            potential=self.potential,
            tau=self.tau,
            step=min(self.step, rho / 10),
            horizon=horizon,
            rho=rho,
            samples=self.samples,
            seed=self.seed,
            region=self.region,
            integrator=self.integrator,
        )


@dataclass(frozen=True, eq=False)
class ShellSample:
    """Points on {H = tau} with their coarea weights 2 pi sqrt(V + tau)."""

    x: np.ndarray
    xi: np.ndarray
    weights: np.ndarray
    shell_volume: float


def sample_shell(config: FlowConfig) -> ShellSample:
    """Rejection-sample x in the cube, then xi uniform on the sphere |xi|^2 = V(x) + tau.

    Raises:
        EmptyShellError: If no point of the cube lies under the shell.
    """
    rng = np.random.default_rng(config.seed)
    accepted_x: list[np.ndarray] = []
    drawn = 0
    count = 0
    for _ in range(MAX_REJECTION_ROUNDS):
        batch = rng.uniform(-config.region, config.region, size=(3, 4 * config.samples))
        drawn += batch.shape[1]
        inside = config.potential.value(batch) + config.tau > 0
        accepted_x.append(batch[:, inside])
        count += int(inside.sum())
        if count >= config.samples:
            break
    if count == 0:
        raise EmptyShellError(config.tau)
    x = np.concatenate(accepted_x, axis=1)
    # kept weights stand in for every accepted draw in the volume estimate
    x = x[:, : config.samples]
    radius = np.sqrt(config.potential.value(x) + config.tau)
    direction = rng.standard_normal((3, x.shape[1]))
    direction /= np.linalg.norm(direction, axis=0)
    weights = 2.0 * math.pi * radius
    cube = (2.0 * config.region) ** 3
    shell_volume = cube * float(weights.sum()) / drawn * (count / x.shape[1])
    return ShellSample(x=x, xi=radius * direction, weights=weights, shell_volume=shell_volume)


@dataclass(eq=False)
class _ReturnTracker:
    start: np.ndarray
    rho: float
    left: np.ndarray = field(init=False)
    return_time: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        n = self.start.shape[1]
        self.left = np.zeros(n, dtype=bool)
        self.return_time = np.full(n, np.nan)

    def update(self, state: np.ndarray, t: float) -> None:
        distance = np.linalg.norm(state - self.start, axis=0)
        self.left |= distance > self.rho
        fresh = self.left & np.isnan(self.return_time) & (distance <= self.rho)
        self.return_time[fresh] = t


def wilson_interval(p: float, n_eff: float, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a proportion with effective sample size n_eff."""
    if n_eff <= 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2))
    denominator = 1 + z**2 / n_eff
    center = (p + z**2 / (2 * n_eff)) / denominator
    half = z * math.sqrt(p * (1 - p) / n_eff + z**2 / (4 * n_eff**2)) / denominator
    return max(0.0, center - half), min(1.0, center + half)


def periodic_measure_samples(config: FlowConfig) -> tuple[PeriodicMeasure, list[SampleOutcome]]:
    """Estimate and the per-sample outcomes.

    Raises:
        EmptyShellError: If the shell misses the sampling cube.
        IntegratorInstabilityError: If energy drift signals an unstable step.
    """
    shell = sample_shell(config)
    V = config.potential
    n_steps = max(1, math.ceil(config.horizon / config.step))
    dt = config.horizon / n_steps
    x, xi = shell.x.copy(), shell.xi.copy()
    h0 = hamiltonian(V, x, xi)
    scale = np.maximum(np.sum(xi**2, axis=0) + np.abs(V.value(x)), 1e-300)
    tracker = _ReturnTracker(start=np.vstack([x, xi]), rho=config.rho)
    drift = 0.0
    for n in range(1, n_steps + 1):
        x, xi = step_state(V, x, xi, dt, config.integrator)
        tracker.update(np.vstack([x, xi]), n * dt)
        if n % 100 == 0 or n == n_steps:
            drift = max(drift, float(relative_drift(V, x, xi, h0, scale).max()))
            if not np.isfinite(drift) or drift > INSTABILITY_DRIFT:
                raise IntegratorInstabilityError(drift, dt)

    returned = ~np.isnan(tracker.return_time)
    weights = shell.weights
    estimate = float(weights[returned].sum() / weights.sum())
    n_eff = float(weights.sum() ** 2 / np.sum(weights**2))
    lower, upper = wilson_interval(estimate, n_eff)
    measure = PeriodicMeasure(
        estimate=estimate,
        lower=lower,
        upper=upper,
        samples=int(weights.size),
        effective_samples=n_eff,
        returned=int(returned.sum()),
        shell_volume=shell.shell_volume,
        tau=config.tau,
        horizon=config.horizon,
        rho=config.rho,
        max_drift=drift,
    )
    outcomes = [
        SampleOutcome(
            x=tuple(shell.x[:, i]),
            xi=tuple(shell.xi[:, i]),
            weight=float(weights[i]),
            return_time=None if np.isnan(tracker.return_time[i]) else float(tracker.return_time[i]),
        )
        for i in range(weights.size)
    ]
    logger.info(
        "Periodic measure T=%g rho=%g: %.4f [%.4f, %.4f] (%d/%d returned, drift %.1e)",
        config.horizon,
        config.rho,
        estimate,
        lower,
        upper,
        measure.returned,
        measure.samples,
        drift,
    )
    return measure, outcomes


def periodic_measure(config: FlowConfig) -> PeriodicMeasure:
    """Weighted fraction of shell samples whose orbit returns within rho by the horizon."""
    return periodic_measure_samples(config)[0]


def scan_periodic_measure(
    config: FlowConfig, horizons: Sequence[float], radii: Sequence[float]
) -> list[PeriodicMeasure]:
    """Estimates over nested (T, rho) with one seed, to expose the trend."""
    return [
        periodic_measure(config.with_limits(horizon, rho)) for horizon in horizons for rho in radii
    ]
