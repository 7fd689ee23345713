"""Pydantic models for paulilab.

Settings, enums and constants next to the domain records, grouped for
importing from one place.
"""

# Constants
from paulilab.models.constants import (
    APP_NAME,
    CONFIG_FILENAME,
    EXIT_NUMERICAL,
    EXIT_SUCCESS,
    EXIT_VALIDATION,
    INDEX_COLUMNS,
)

# Domain models
from paulilab.models.domain import (
    FitReport,
    FitResult,
    MinimizerCheckpoint,
    PeriodicMeasure,
    RemainderPrediction,
    SweepPlan,
    SweepRecord,
    WeylSummary,
)

# Enums
from paulilab.models.enums import FitTarget, Integrator, Preset, RegimeTag, SolverKind

# Settings models
from paulilab.models.settings import ExperimentConfig, Settings, get_settings

__all__ = [
    # Settings
    "ExperimentConfig",
    "Settings",
    "get_settings",
    # Enums
    "FitTarget",
    "Integrator",
    "Preset",
    "RegimeTag",
    "SolverKind",
    # Domain
    "FitReport",
    "FitResult",
    "MinimizerCheckpoint",
    "PeriodicMeasure",
    "RemainderPrediction",
    "SweepPlan",
    "SweepRecord",
    "WeylSummary",
    # Constants
    "APP_NAME",
    "CONFIG_FILENAME",
    "EXIT_NUMERICAL",
    "EXIT_SUCCESS",
    "EXIT_VALIDATION",
    "INDEX_COLUMNS",
]
