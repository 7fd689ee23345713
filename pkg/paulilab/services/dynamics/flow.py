"""Symplectic integration of the flow of H(x, xi) = |xi|^2 - V(x).

The equations of motion are ``x' = 2 xi`` and ``xi' = grad V(x)``. States are
arrays of shape (3, n) so that many orbits advance together.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from paulilab.exceptions import IntegratorInstabilityError
from paulilab.models.enums import Integrator
from paulilab.services.fields.potentials import AnalyticPotential

logger = logging.getLogger(__name__)

INSTABILITY_DRIFT = 1e-2

_CBRT2 = 2.0 ** (1.0 / 3.0)
_W1 = 1.0 / (2.0 - _CBRT2)
_W0 = -_CBRT2 / (2.0 - _CBRT2)
YOSHIDA_DRIFTS = (_W1 / 2, (_W0 + _W1) / 2, (_W0 + _W1) / 2, _W1 / 2)
YOSHIDA_KICKS = (_W1, _W0, _W1)


def hamiltonian(V: AnalyticPotential, x: np.ndarray, xi: np.ndarray) -> np.ndarray:
    """|xi|^2 - V(x) per column."""
    return np.sum(xi**2, axis=0) - V.value(x)


def step_state(
    V: AnalyticPotential, x: np.ndarray, xi: np.ndarray, dt: float, integrator: Integrator
) -> tuple[np.ndarray, np.ndarray]:
    """Advance (x, xi) by one step of size dt."""
    match integrator:
        case Integrator.LEAPFROG:
            xi = xi + 0.5 * dt * V.gradient(x)
            x = x + 2.0 * dt * xi
            xi = xi + 0.5 * dt * V.gradient(x)
        case Integrator.YOSHIDA4:
            for c, d in zip(YOSHIDA_DRIFTS[:3], YOSHIDA_KICKS, strict=True):
                x = x + 2.0 * c * dt * xi
                xi = xi + d * dt * V.gradient(x)
            x = x + 2.0 * YOSHIDA_DRIFTS[3] * dt * xi
    return x, xi


def relative_drift(
    V: AnalyticPotential, x: np.ndarray, xi: np.ndarray, h0: np.ndarray, scale: np.ndarray
) -> np.ndarray:
    """|H - H0| / (|xi0|^2 + |V(x0)|) per column."""
    return np.abs(hamiltonian(V, x, xi) - h0) / scale


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled orbit, positions and momenta of shape (n_steps + 1, 3)."""

    times: np.ndarray
    x: np.ndarray
    xi: np.ndarray
    drift: float


def flow(
    V: AnalyticPotential,
    x0: tuple[float, float, float],
    xi0: tuple[float, float, float],
    T: float,
    step: float,
    integrator: Integrator = Integrator.YOSHIDA4,
) -> Trajectory:
    """Integrate one orbit up to time T.

    The number of steps is ceil(T / step), with the step shrunk to land on T.

    Raises:
        IntegratorInstabilityError: If the state blows up or energy drifts
            beyond the instability limit.
    """
    if step <= 0 or T < 0:
        raise ValueError(f"need step > 0 and T >= 0, got step={step}, T={T}")
    n_steps = max(1, math.ceil(T / step))
    dt = T / n_steps
    x = np.asarray(x0, dtype=float).reshape(3, 1)
    xi = np.asarray(xi0, dtype=float).reshape(3, 1)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(xi))):
        raise ValueError("initial state must be finite")
    h0 = hamiltonian(V, x, xi)
    scale = np.maximum(np.sum(xi**2, axis=0) + np.abs(V.value(x)), 1e-300)

    xs = np.empty((n_steps + 1, 3))
    xis = np.empty((n_steps + 1, 3))
    xs[0], xis[0] = x[:, 0], xi[:, 0]
    drift = 0.0
    for n in range(1, n_steps + 1):
        x, xi = step_state(V, x, xi, dt, integrator)
        drift = max(drift, float(relative_drift(V, x, xi, h0, scale).max()))
        if not np.isfinite(drift) or drift > INSTABILITY_DRIFT:
            raise IntegratorInstabilityError(drift, dt)
        xs[n], xis[n] = x[:, 0], xi[:, 0]
    return Trajectory(times=np.linspace(0.0, T, n_steps + 1), x=xs, xi=xis, drift=drift)
