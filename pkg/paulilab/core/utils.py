"""Core utility functions.

Common helper functions shared by the CLI and the sweep runner.
"""

from pathlib import Path

from paulilab.models.settings import ExperimentConfig


def require_config(config_path: Path | None = None) -> ExperimentConfig:
    """Resolve the experiment configuration for a command.

    Args:
        config_path: Explicit ``--config`` value, if any.

    Returns:
        The validated experiment configuration.

    Raises:
        ConfigNotFoundError: If neither an explicit nor a discoverable config exists.
    """
    from paulilab.exceptions import ConfigNotFoundError
    from paulilab.models.constants import CONFIG_FILENAME
    from paulilab.models.settings import get_settings

    settings = get_settings(config_path)
    if settings.config_path is None:
        raise ConfigNotFoundError([f"./{CONFIG_FILENAME} (up to project root)", "user config dir"])
    return settings.experiment
