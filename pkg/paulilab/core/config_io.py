"""Configuration file I/O operations.

Experiment configurations are single JSON documents. JSON is a subset of
YAML, so the document is also composed with PyYAML to recover the line of
every key; validation errors are reported against those lines.
"""

import json
import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from paulilab.exceptions import InvalidConfigError
from paulilab.models.settings import ExperimentConfig

logger = logging.getLogger(__name__)


def _line_index(text: str) -> dict[tuple[str | int, ...], int]:
    """Map every key path of a JSON/YAML document to its 1-based line."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return {}
    index: dict[tuple[str | int, ...], int] = {}

    def walk(node: yaml.Node, path: tuple[str | int, ...]) -> None:
        index[path] = node.start_mark.line + 1
        if isinstance(node, yaml.MappingNode):
            for key_node, value_node in node.value:
                child = (*path, str(key_node.value))
                walk(value_node, child)
                index[child] = key_node.start_mark.line + 1
        elif isinstance(node, yaml.SequenceNode):
            for position, item in enumerate(node.value):
                walk(item, (*path, position))

    if root is not None:
        walk(root, ())
    return index


def _locate(index: dict[tuple[str | int, ...], int], loc: tuple[str | int, ...]) -> int | None:
    """Line of the deepest existing prefix of a pydantic error location."""
    for depth in range(len(loc), -1, -1):
        line = index.get(tuple(loc[:depth]))
        if line is not None:
            return line
    return None


def parse_experiment_config(text: str, source: str = "<string>") -> ExperimentConfig:
    """Validate configuration text.

    Args:
        text: JSON document.
        source: Name used in error messages.

    Returns:
        The validated ExperimentConfig.

    Raises:
        InvalidConfigError: On malformed JSON or failed validation, with the
            line of the offending key when it can be determined.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidConfigError(source, e.msg, line=e.lineno) from e
    if not isinstance(data, dict):
        raise InvalidConfigError(source, "top level must be a JSON object", line=1)

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = tuple(first["loc"])
        line = _locate(_line_index(text), loc)
        where = ".".join(str(part) for part in loc) or "<root>"
        raise InvalidConfigError(source, f"{where}: {first['msg']}", line=line) from e


def load_experiment_config(config_filepath: Path) -> ExperimentConfig:
    """Load and validate an experiment configuration file.

    Args:
        config_filepath: Path to the JSON config file.

    Returns:
        The validated ExperimentConfig.
    """
    logger.debug("Loading experiment configuration from %s", config_filepath)
    return parse_experiment_config(
        config_filepath.read_text(encoding="utf-8"), source=str(config_filepath)
    )


def experiment_to_dict(config: ExperimentConfig) -> dict[str, Any]:
    """Serialize a configuration with every default made explicit."""
    return config.model_dump(mode="json")


def write_experiment_config(config: ExperimentConfig, path: Path) -> Path:
    """Write a self-describing configuration (all defaults explicit).

    Args:
        config: Configuration to write.
        path: Destination file.

    Returns:
        The written path.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(experiment_to_dict(config), indent=2) + "\n", encoding="utf-8")
    return path
