"""Classical Hamiltonian flow and the measure of its periodic points."""

from paulilab.services.dynamics.flow import Trajectory, flow, hamiltonian, step_state
from paulilab.services.dynamics.measure import (
    FlowConfig,
    ShellSample,
    periodic_measure,
    periodic_measure_samples,
    sample_shell,
    scan_periodic_measure,
    wilson_interval,
)

__all__ = [
    # Flow
    "Trajectory",
    "flow",
    "hamiltonian",
    "step_state",
    # Periodic measure
    "FlowConfig",
    "ShellSample",
    "periodic_measure",
    "periodic_measure_samples",
    "sample_shell",
    "scan_periodic_measure",
    "wilson_interval",
]
