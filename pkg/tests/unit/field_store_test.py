"""Unit tests for the binary and CSV field store."""

import numpy as np
import pytest

from paulilab.exceptions import GridMismatchError, StateLoadError
from paulilab.services.fields import Grid, ScalarField, VectorField
from paulilab.repositories.field_store import HEADER, FieldStore


class TestFieldStore:
    """Tests for FieldStore."""

    def test_vector_field_round_trip(self, temp_dir, small_grid: Grid, random_field):
        """Test a vector field is restored bit for bit."""
        store = FieldStore(temp_dir / "fields")
        A = random_field(small_grid, seed=4)

        store.save("A", A)
        loaded = store.load("A", small_grid)

        assert isinstance(loaded, VectorField)
        assert loaded.grid == small_grid
        assert np.array_equal(loaded.values, A.values)

    def test_scalar_field_round_trip(self, temp_dir, gaussian_well: ScalarField):
        """Test a scalar field comes back as a ScalarField."""
        store = FieldStore(temp_dir)

        store.save("V", gaussian_well)

        loaded = store.load("V")
        assert isinstance(loaded, ScalarField)
        assert np.array_equal(loaded.values, gaussian_well.values)

    def test_header_layout(self, temp_dir, small_grid: Grid):
        """Test the file is the header followed by 3 * n_sites doubles."""
        store = FieldStore(temp_dir)

        path = store.save("A", VectorField.zeros(small_grid))

        assert path.stat().st_size == HEADER.itemsize + 8 * 3 * small_grid.n_sites
        assert path.read_bytes()[:4] == b"PLFD"

    def test_bad_magic(self, temp_dir, small_grid: Grid):
        """Test a file with another magic is refused."""
        store = FieldStore(temp_dir)
        path = store.save("A", VectorField.zeros(small_grid))
        path.write_bytes(b"XXXX" + path.read_bytes()[4:])

        with pytest.raises(StateLoadError, match="magic"):
            store.load("A")

    def test_truncated_file(self, temp_dir, small_grid: Grid):
        """Test missing values are reported."""
        store = FieldStore(temp_dir)
        path = store.save("A", VectorField.zeros(small_grid))
        path.write_bytes(path.read_bytes()[:-8])

        with pytest.raises(StateLoadError, match="expected"):
            store.load("A")

    def test_missing_file(self, temp_dir):
        """Test loading an absent field raises."""
        store = FieldStore(temp_dir)

        assert not store.exists("A")
        with pytest.raises(StateLoadError):
            store.load("A")

    def test_grid_mismatch(self, temp_dir, small_grid: Grid, tiny_grid: Grid):
        """Test a stored grid differing from the expected one is refused."""
        store = FieldStore(temp_dir)
        store.save("A", VectorField.zeros(small_grid))

        with pytest.raises(GridMismatchError):
            store.load("A", tiny_grid)

    def test_export_csv(self, temp_dir, tiny_grid: Grid):
        """Test one row per site with coordinates and components."""
        store = FieldStore(temp_dir)

        path = store.export_csv("A", VectorField.zeros(tiny_grid))

        lines = path.read_text().splitlines()
        assert lines[0] == "x,y,z,Ax,Ay,Az"
        assert len(lines) == 1 + tiny_grid.n_sites
