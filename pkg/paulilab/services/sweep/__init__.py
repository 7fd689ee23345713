"""Sweep planning and execution."""

from paulilab.services.sweep.report import REPORT_COLUMNS, report_rows, write_report_csv
from paulilab.services.sweep.runner import (
    PointStatus,
    SweepSummary,
    build_plan,
    point_key,
    point_prediction,
    run_point,
    run_sweep,
    run_sweep_async,
    sample_experiment_potential,
)

__all__ = [
    # Report
    "REPORT_COLUMNS",
    "report_rows",
    "write_report_csv",
    # Runner
    "PointStatus",
    "SweepSummary",
    "build_plan",
    "point_key",
    "point_prediction",
    "run_point",
    "run_sweep",
    "run_sweep_async",
    "sample_experiment_potential",
]
