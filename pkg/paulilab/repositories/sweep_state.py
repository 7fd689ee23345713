"""Results directory of a sweep.

Layout::

    <root>/plan.json
    <root>/index.csv                   one row per completed point
    <root>/points/<key>/record.json
    <root>/points/<key>/minimizer.json checkpoint of an unfinished point
    <root>/points/<key>/A.bin          minimizing field
"""

import csv
import logging
import threading
from pathlib import Path

from paulilab.exceptions import StateLoadError, StateSaveError
from paulilab.models.constants import (
    CHECKPOINT_FILENAME,
    INDEX_COLUMNS,
    INDEX_FILENAME,
    PLAN_FILENAME,
    POINTS_DIRNAME,
    RECORD_FILENAME,
)
from paulilab.models.domain.selfgen import MinimizerCheckpoint
from paulilab.models.domain.sweep import SweepPlan, SweepRecord
from paulilab.repositories.field_store import FieldStore, GridField
from paulilab.repositories.json_state import JsonStateRepository

logger = logging.getLogger(__name__)


class SweepRepository:
    """Persists plans, per-point records, checkpoints and fields of one sweep.

    Records are written once and never modified; ``index.csv`` is appended
    under a lock, one row per record.

    Args:
        root: Output directory of the sweep.
    """

    def __init__(self, root: Path):
        self._root = root
        self._index_lock = threading.Lock()

    @property
    def root(self) -> Path:
        """Output directory."""
        return self._root

    @property
    def index_path(self) -> Path:
        """Path of the index CSV."""
        return self._root / INDEX_FILENAME

    def is_empty(self) -> bool:
        """True when no point has started; plan and configuration files do not count."""
        points = self._root / POINTS_DIRNAME
        started = points.is_dir() and any(points.iterdir())
        return not started and not self.index_path.exists()

    def point_dir(self, key: str) -> Path:
        """Directory of one sweep point."""
        return self._root / POINTS_DIRNAME / key

    def _record_repo(self, key: str) -> JsonStateRepository:
        return JsonStateRepository(self.point_dir(key) / RECORD_FILENAME)

    def _checkpoint_repo(self, key: str) -> JsonStateRepository:
        return JsonStateRepository(self.point_dir(key) / CHECKPOINT_FILENAME)

    def fields(self, key: str) -> FieldStore:
        """Field blobs of one point."""
        return FieldStore(self.point_dir(key))

    # Plan

    def save_plan(self, plan: SweepPlan) -> None:
        """Write the plan document."""
        JsonStateRepository(self._root / PLAN_FILENAME).save_model(plan)

    def load_plan(self) -> SweepPlan | None:
        """Read the plan document, if any."""
        return JsonStateRepository(self._root / PLAN_FILENAME).load_model(SweepPlan)

    # Records

    def has_record(self, key: str) -> bool:
        """Whether the point has a completed record."""
        return self._record_repo(key).exists()

    def load_record(self, key: str) -> SweepRecord | None:
        """The record of a point, if completed."""
        return self._record_repo(key).load_model(SweepRecord)

    def save_record(self, record: SweepRecord) -> None:
        """Write a completed record, append its index row and drop the checkpoint.

        Raises:
            StateSaveError: If the point already has a record.
        """
        repo = self._record_repo(record.key)
        if repo.exists():
            raise StateSaveError(str(repo.path), "record already written")
        repo.save_model(record)
        self._append_index(record)
        self._checkpoint_repo(record.key).delete()
        logger.debug("Saved record h=%g kappa=%g to %s", record.h, record.kappa, repo.path)

    def records(self) -> list[SweepRecord]:
        """All completed records, ordered by (h descending, kappa)."""
        points = self._root / POINTS_DIRNAME
        if not points.is_dir():
            return []
        found = []
        for directory in sorted(points.iterdir()):
            record = self.load_record(directory.name) if directory.is_dir() else None
            if record is not None:
                found.append(record)
        return sorted(found, key=lambda r: (-r.h, r.kappa))

    def _append_index(self, record: SweepRecord) -> None:
        with self._index_lock:
            new_file = not self.index_path.is_file()
            try:
                self._root.mkdir(parents=True, exist_ok=True)
                with self.index_path.open("a", newline="", encoding="utf-8") as handle:
                    writer = csv.DictWriter(handle, fieldnames=list(INDEX_COLUMNS))
                    if new_file:
                        writer.writeheader()
                    writer.writerow(record.index_row())
            except OSError as e:
                raise StateSaveError(str(self.index_path), str(e)) from e

    def read_index(self) -> list[dict[str, str]]:
        """Rows of the index CSV as strings.

        Raises:
            StateLoadError: If the header differs from the fixed columns.
        """
        if not self.index_path.is_file():
            return []
        with self.index_path.open(newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if tuple(reader.fieldnames or ()) != INDEX_COLUMNS:
                raise StateLoadError(
                    str(self.index_path), f"unexpected columns {reader.fieldnames}"
                )
            return list(reader)

    # Checkpoints and fields

    def save_checkpoint(self, key: str, checkpoint: MinimizerCheckpoint, field: GridField) -> None:
        """Store the scalars and the field of an unfinished minimization."""
        self.fields(key).save("A_checkpoint", field)
        self._checkpoint_repo(key).save_model(checkpoint)

    def load_checkpoint(self, key: str) -> tuple[MinimizerCheckpoint, GridField] | None:
        """The latest checkpoint of a point, if any."""
        checkpoint = self._checkpoint_repo(key).load_model(MinimizerCheckpoint)
        if checkpoint is None or not self.fields(key).exists("A_checkpoint"):
            return None
        return checkpoint, self.fields(key).load("A_checkpoint")

    def save_field(self, key: str, name: str, field: GridField) -> Path:
        """Store a field blob of a point."""
        return self.fields(key).save(name, field)
