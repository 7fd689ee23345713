"""JSON document persistence for plans, checkpoints, records and reports."""

import hashlib
import json
import os
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from paulilab.exceptions import StateLoadError, StateSaveError


class JsonStateRepository:
    """One JSON document on disk.

    Writes replace the target atomically through a sibling temporary file.

    Args:
        state_path: Path to the JSON document.

    Example:
        >>> repo = JsonStateRepository(Path("runs/plan.json"))
        >>> repo.save_model(plan)
        >>> SweepPlan.model_validate(repo.load())
    """

    def __init__(self, state_path: Path):
        """Initialize repository with the document path.

        Args:
            state_path: Path where the document is persisted.
        """
        self._path = state_path

    @property
    def path(self) -> Path:
        """Get the document path."""
        return self._path

    def exists(self) -> bool:
        """Check if the document exists."""
        return self._path.is_file()

    def load(self) -> dict[str, Any]:
        """Load the document.

        Returns:
            The stored mapping, or an empty dict if the file does not exist.

        Raises:
            StateLoadError: If the file exists but is not a JSON object.
        """
        if not self._path.is_file():
            return {}
        try:
            data = json.loads(self._path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, OSError) as e:
            raise StateLoadError(str(self._path), str(e)) from e
        if not isinstance(data, dict):
            raise StateLoadError(str(self._path), "top-level value is not an object")
        return data

    def load_model[M: BaseModel](self, model_type: type[M]) -> M | None:
        """Load and validate the document as ``model_type``; None if absent.

        Raises:
            StateLoadError: If the document is unreadable or fails validation.
        """
        if not self.exists():
            return None
        try:
            return model_type.model_validate(self.load())
        except ValueError as e:
            raise StateLoadError(str(self._path), str(e)) from e

    def save(self, state: dict[str, Any]) -> None:
        """Write the document, creating parent directories.

        Args:
            state: Mapping to persist as JSON.

        Raises:
            StateSaveError: If the file cannot be written.
        """
        self._write(json.dumps(state, ensure_ascii=False, indent=2, default=str))

    def save_model(self, model: BaseModel) -> None:
        """Write a pydantic model as the document."""
        self._write(model.model_dump_json(indent=2))

    def _write(self, text: str) -> None:
        temporary = self._path.with_name(f".{self._path.name}.tmp")
        try:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            temporary.write_text(text, encoding="utf-8")
            os.replace(temporary, self._path)
        except OSError as e:
            raise StateSaveError(str(self._path), str(e)) from e

    @staticmethod
    def compute_hash(*args: Any) -> str:
        """SHA-256 of the JSON serialization of the arguments.

        Pydantic models are dumped in JSON mode first, so equal configurations
        hash equally regardless of how they were constructed.
        """
        payload = [
            arg.model_dump(mode="json") if isinstance(arg, BaseModel) else arg for arg in args
        ]
        combined = b"".join(
            json.dumps(item, sort_keys=True, default=str).encode("utf-8") for item in payload
        )
        return hashlib.sha256(combined).hexdigest()

    def delete(self) -> bool:
        """Delete the document if it exists.

        Returns:
            True if the file was deleted, False if it did not exist.
        """
        if self._path.is_file():
            self._path.unlink()
            return True
        return False
