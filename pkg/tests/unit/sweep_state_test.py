"""Unit tests for the sweep results directory."""

import pytest

from paulilab.exceptions import StateLoadError, StateSaveError
from paulilab.models.constants import INDEX_COLUMNS
from paulilab.models.domain.selfgen import MinimizerCheckpoint
from paulilab.models.domain.sweep import SweepPlan, SweepPoint
from paulilab.repositories.sweep_state import SweepRepository
from paulilab.services.fields import Grid, VectorField


class TestSweepRepository:
    """Tests for SweepRepository."""

    def test_fresh_directory_is_empty(self, temp_dir):
        """Test a missing directory counts as empty."""
        repo = SweepRepository(temp_dir / "runs")
        assert repo.is_empty()

    def test_plan_does_not_count(self, temp_dir, small_experiment):
        """Test a saved plan leaves the directory empty for a new sweep."""
        repo = SweepRepository(temp_dir / "runs")
        plan = SweepPlan(config=small_experiment, points=[SweepPoint(h=1.0, kappa=0.5, seed=7, key="k")])

        repo.save_plan(plan)

        assert repo.is_empty()
        assert repo.load_plan().points == plan.points

    def test_save_record_writes_index(self, temp_dir, make_record):
        """Test a record is readable and adds one index row."""
        repo = SweepRepository(temp_dir)
        record = make_record(0.5)

        repo.save_record(record)

        assert not repo.is_empty()
        assert repo.has_record(record.key)
        assert repo.load_record(record.key) == record
        rows = repo.read_index()
        assert len(rows) == 1
        assert tuple(rows[0]) == INDEX_COLUMNS
        assert float(rows[0]["h"]) == 0.5

    def test_records_are_write_once(self, temp_dir, make_record):
        """Test a second record for the same key is refused."""
        repo = SweepRepository(temp_dir)
        repo.save_record(make_record(0.5))

        with pytest.raises(StateSaveError):
            repo.save_record(make_record(0.5))

    def test_records_order(self, temp_dir, make_record):
        """Test records come back by h descending then kappa."""
        repo = SweepRepository(temp_dir)
        for h, kappa in [(0.3, 1.0), (0.5, 2.0), (0.3, 0.5), (0.5, 0.5)]:
            repo.save_record(make_record(h, kappa))

        assert [(r.h, r.kappa) for r in repo.records()] == [(0.5, 0.5), (0.5, 2.0), (0.3, 0.5), (0.3, 1.0)]
        assert len(repo.read_index()) == 4

    def test_bad_index_header(self, temp_dir):
        """Test an index with other columns is refused."""
        repo = SweepRepository(temp_dir)
        repo.index_path.write_text("a,b\n1,2\n")

        with pytest.raises(StateLoadError):
            repo.read_index()

    def test_checkpoint_round_trip_and_cleanup(self, temp_dir, small_grid: Grid, random_field, make_record):
        """Test checkpoints load back and are removed when the record lands."""
        repo = SweepRepository(temp_dir)
        record = make_record(0.5)
        checkpoint = MinimizerCheckpoint(
            h=0.5,
            kappa=0.5,
            energy=-1.0,
            trace=-1.1,
            field_energy=0.01,
            el_residual=0.2,
            iteration=3,
            mixing=0.5,
            converged=False,
        )
        A = random_field(small_grid)

        repo.save_checkpoint(record.key, checkpoint, A)
        loaded, field = repo.load_checkpoint(record.key)

        assert loaded == checkpoint
        assert (field.values == A.values).all()

        repo.save_record(record)
        assert repo.load_checkpoint(record.key) is None

    def test_save_field(self, temp_dir, small_grid: Grid):
        """Test fields land in the point directory."""
        repo = SweepRepository(temp_dir)

        path = repo.save_field("abc", "A", VectorField.zeros(small_grid))

        assert path.parent == repo.point_dir("abc")
