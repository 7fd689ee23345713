"""Domain models for paulilab."""

from paulilab.models.domain.dynamics import PeriodicMeasure, SampleOutcome
from paulilab.models.domain.localize import IsmReport, LocalizedEnergy, SubadditivityReport
from paulilab.models.domain.scaling import FitReport, FitResult, RemainderPrediction, ScaleState
from paulilab.models.domain.selfgen import (
    Diagnostics,
    HistoryEntry,
    InequalityCheck,
    InequalityReport,
    LowerBoundRow,
    MinimizerCheckpoint,
)
from paulilab.models.domain.sweep import SweepPlan, SweepPoint, SweepRecord
from paulilab.models.domain.weyl import CorrectedWeyl, WeylSummary

__all__ = [
    # Weyl models
    "CorrectedWeyl",
    "WeylSummary",
    # Self-generated field models
    "Diagnostics",
    "HistoryEntry",
    "InequalityCheck",
    "InequalityReport",
    "LowerBoundRow",
    "MinimizerCheckpoint",
    # Localization models
    "IsmReport",
    "LocalizedEnergy",
    "SubadditivityReport",
    # Dynamics models
    "PeriodicMeasure",
    "SampleOutcome",
    # Scaling models
    "FitReport",
    "FitResult",
    "RemainderPrediction",
    "ScaleState",
    # Sweep models
    "SweepPlan",
    "SweepPoint",
    "SweepRecord",
]
