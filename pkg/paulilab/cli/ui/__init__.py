"""CLI UI layer - presentation abstractions."""

from paulilab.cli.ui.console import console, constants_line, error, info, success, warning
from paulilab.cli.ui.formatters import (
    LocalizeFormatter,
    SelfgenFormatter,
    SpectrumFormatter,
    SweepFormatter,
)
from paulilab.cli.ui.progress import sweep_progress

__all__ = [
    # Console
    "console",
    "constants_line",
    "info",
    "success",
    "warning",
    "error",
    # Progress
    "sweep_progress",
    # Formatters
    "LocalizeFormatter",
    "SelfgenFormatter",
    "SpectrumFormatter",
    "SweepFormatter",
]
