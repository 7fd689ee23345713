"""Shared CLI options, configuration resolution and error-to-exit-code mapping."""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError

from paulilab.cli.ui.console import error
from paulilab.core.logging import ensure_logging_configured
from paulilab.exceptions import (
    ConfigurationError,
    FieldError,
    PaulilabError,
    ResolutionError,
    ScalingError,
    StateError,
    StateLoadError,
)
from paulilab.models.constants import EXIT_NUMERICAL, EXIT_VALIDATION
from paulilab.models.settings import ExperimentConfig, Settings, get_settings
from paulilab.repositories import FieldStore
from paulilab.services.fields import Grid, VectorField

logger = logging.getLogger(__name__)

ConfigOption = Annotated[
    Path | None,
    typer.Option("--config", "-c", help="Experiment configuration (JSON)", dir_okay=False),
]
OutOption = Annotated[Path | None, typer.Option("--out", "-o", help="Output directory")]
WorkersOption = Annotated[
    int | None, typer.Option("--workers", "-w", min=1, help="Concurrent sweep points")
]
SeedOption = Annotated[int | None, typer.Option("--seed", help="Override the configured seed")]
ResumeOption = Annotated[
    bool, typer.Option("--resume", help="Continue a sweep in a non-empty output directory")
]
HOption = Annotated[float | None, typer.Option("--h", help="Semiclassical parameter")]
KappaOption = Annotated[float | None, typer.Option("--kappa", help="Coupling constant")]


def exit_code_for(exc: Exception) -> int:
    """Exit code of an error: 2 for invalid input, 3 for numerical failure."""
    invalid_input = (
        ConfigurationError,
        StateError,
        ScalingError,
        FieldError,
        ResolutionError,
        ValidationError,
        ValueError,
    )
    if isinstance(exc, invalid_input):
        return EXIT_VALIDATION
    return EXIT_NUMERICAL


def load_settings(config_path: Path | None, required: bool = True) -> Settings:
    """Settings for a command.

    Args:
        config_path: Explicit ``--config`` value.
        required: When False, fall back to defaults if no file is found.

    Raises:
        ConfigNotFoundError: If required and no configuration file is found.
    """
    from paulilab.core.utils import require_config

    if required:
        require_config(config_path)
    return get_settings(config_path)


def resolve_experiment(
    config_path: Path | None,
    seed: int | None = None,
    out: Path | None = None,
    required: bool = True,
) -> ExperimentConfig:
    """The experiment with command-line overrides applied.

    Overrides go through validation again, so a bad flag is reported like a
    bad configuration value.
    """
    experiment = load_settings(config_path, required).experiment
    updates: dict[str, object] = {}
    if seed is not None:
        updates["seed"] = seed
    if out is not None:
        updates["output_dir"] = out
    if not updates:
        return experiment
    return ExperimentConfig.model_validate({**experiment.model_dump(), **updates})


@contextmanager
def command_context() -> Iterator[None]:
    """Run a command body with logging configured and errors mapped to exit codes.

    Example:
        >>> @app.callback(invoke_without_command=True)
        >>> def weyl(config: ConfigOption = None):
        >>>     with command_context():
        >>>         experiment = resolve_experiment(config)
    """
    ensure_logging_configured()
    try:
        yield
    except typer.Exit:
        raise
    except (PaulilabError, ValidationError, ValueError) as e:
        logger.debug("Command failed", exc_info=True)
        error(str(e))
        raise typer.Exit(exit_code_for(e)) from e


def load_vector_field(path: Path, grid: Grid) -> VectorField:
    """Read a vector potential blob written by a sweep or ``minimize --out``.

    Raises:
        StateLoadError: If the blob is unreadable or holds a scalar field.
    """
    loaded = FieldStore(path.parent).load(path.stem, grid)
    if not isinstance(loaded, VectorField):
        raise StateLoadError(str(path), "holds a scalar field, expected a vector potential")
    return loaded
