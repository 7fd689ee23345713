"""Shared test fixtures for all test levels.

This module provides reusable fixtures that avoid duplication across
unit, integration, and e2e tests. Grids are kept small (4^3 to 8^3) so
dense diagonalization stays cheap.
"""

import json
import math
import tempfile
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np
import pytest
from git import Repo

from paulilab.models.domain.selfgen import Diagnostics
from paulilab.models.domain.sweep import SweepRecord
from paulilab.models.settings import ExperimentConfig
from paulilab.services.fields import Grid, ScalarField, VectorField, build_grid, sample_potential

# -----------------------------------------------------------------------------
# Temp Directory Fixtures
# -----------------------------------------------------------------------------


@pytest.fixture
def temp_dir():
    """Provide a temporary directory that's cleaned up after test."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def temp_file(temp_dir: Path):
    """Factory fixture to create temp files with content.

    Returns a function that creates files in the temp directory.
    """

    def _create_file(name: str, content: str = "") -> Path:
        file_path = temp_dir / name
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(content)
        return file_path

    return _create_file


@pytest.fixture
def git_repo():
    """Create a minimal git repository for config discovery tests.

    Provides (repo_path, repo) tuple with an initial commit.
    """
    with tempfile.TemporaryDirectory() as tmpdir:
        repo = Repo.init(tmpdir)
        repo_path = Path(tmpdir)

        repo.config_writer().set_value("user", "name", "Test User").release()
        repo.config_writer().set_value("user", "email", "test@example.com").release()

        readme = repo_path / "README.md"
        readme.write_text("# Test Project\n")
        repo.index.add([str(readme)])
        repo.index.commit("Initial commit")

        yield repo_path, repo


# -----------------------------------------------------------------------------
# Grid and Field Fixtures
# -----------------------------------------------------------------------------


@pytest.fixture
def torus_grid() -> Grid:
    """8^3 grid on the (2 pi)^3 torus; sin and cos of x_i are resolved."""
    return build_grid((8, 8, 8), (2 * math.pi, 2 * math.pi, 2 * math.pi))


@pytest.fixture
def tiny_grid() -> Grid:
    """4^3 grid on a box of side 3, small enough for dense solves everywhere."""
    return build_grid((4, 4, 4), (3.0, 3.0, 3.0))


@pytest.fixture
def small_grid() -> Grid:
    """6^3 grid on a box of side 3 (min h about 0.64)."""
    return build_grid((6, 6, 6), (3.0, 3.0, 3.0))


@pytest.fixture
def gaussian_well(small_grid: Grid) -> ScalarField:
    """Default gaussian well sampled on the 6^3 grid."""
    return sample_potential("gaussian_well", None, small_grid)


@pytest.fixture
def deep_well(small_grid: Grid) -> ScalarField:
    """Gaussian well of amplitude 12 on the 6^3 grid; negative spectrum for h up to 1.

    The default amplitude binds nothing at h >= 0.8.
    """
    return sample_potential("gaussian_well", {"amplitude": 12.0}, small_grid)


@pytest.fixture
def random_well():
    """Factory for seeded gaussian wells deep enough to bind on the 6^3 grid."""

    def _make(grid: Grid, seed: int) -> ScalarField:
        rng = np.random.default_rng(seed)
        params = {"amplitude": rng.uniform(10.0, 14.0), "width": rng.uniform(0.45, 0.55)}
        return sample_potential("gaussian_well", params, grid)

    return _make


@pytest.fixture
def random_field():
    """Factory for smooth random vector potentials built from low Fourier modes."""

    def _make(grid: Grid, amplitude: float = 0.05, seed: int = 0) -> VectorField:
        rng = np.random.default_rng(seed)
        x, y, z = grid.coordinates
        values = np.zeros((3, *grid.dims))
        for component in range(3):
            a, b, c = rng.normal(size=3)
            k = [2 * math.pi / length for length in grid.box]
            values[component] = amplitude * (
                a * np.sin(k[1] * y + 0.3) + b * np.cos(k[2] * z) + c * np.sin(k[0] * x)
            )
        return VectorField(grid, values)

    return _make


# -----------------------------------------------------------------------------
# Configuration Fixtures
# -----------------------------------------------------------------------------


@pytest.fixture
def small_experiment_data(temp_dir: Path) -> dict[str, Any]:
    """Experiment on a 6^3 grid with three h and one kappa, dense solves."""
    return {
        "potential": {"preset": "gaussian_well"},
        "grid": {"dims": [6, 6, 6], "box": [3.0, 3.0, 3.0]},
        "h_values": [1.0, 0.9, 0.8],
        "kappa_values": [0.5],
        "solver": {"kind": "dense"},
        "minimizer": {"max_iterations": 8, "tolerance": 1e-2},
        "output_dir": str(temp_dir / "runs"),
        "seed": 7,
    }


@pytest.fixture
def small_experiment(small_experiment_data: dict[str, Any]) -> ExperimentConfig:
    """Validated small experiment."""
    return ExperimentConfig.model_validate(small_experiment_data)


@pytest.fixture
def config_file(temp_dir: Path, small_experiment_data: dict[str, Any]):
    """Factory writing an experiment configuration file, with optional overrides."""

    def _write(name: str = "experiment.json", **overrides: Any) -> Path:
        path = temp_dir / name
        path.write_text(json.dumps({**small_experiment_data, **overrides}, indent=2))
        return path

    return _write


# -----------------------------------------------------------------------------
# Cleanup Fixtures
# -----------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Clear settings cache before each test to ensure isolation."""
    from paulilab.models.settings import get_settings

    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# -----------------------------------------------------------------------------
# Record Fixtures
# -----------------------------------------------------------------------------


@pytest.fixture
def make_record():
    """Factory for sweep records with given h, kappa and error against Weyl_1."""

    def _make(h: float, kappa: float = 0.5, trace_error: float = 1.0, **overrides: Any) -> SweepRecord:
        weyl1 = -10.0 / h**3
        data: dict[str, Any] = {
            "h": h,
            "kappa": kappa,
            "seed": 0,
            "key": f"{h:g}-{kappa:g}",
            "trace_free": weyl1 + trace_error,
            "trace_minus": weyl1 + trace_error,
            "energy": weyl1 + trace_error,
            "weyl1": weyl1,
            "weyl1_corr": weyl1,
            "field_energy": 0.0,
            "el_residual": 0.0,
            "converged": True,
            "diagnostics": Diagnostics(
                mu=0.0,
                mu_bar=1.0,
                varsigma=kappa * h**0.5,
                M=1.0 / h,
                holder=0.0,
                theta=1.5,
                gradient_norm=0.0,
                local_gradient_norm=0.0,
                predicted_sup=0.0,
            ),
            "started_at": datetime(2026, 1, 1, 12, 0, 0),
            "finished_at": datetime(2026, 1, 1, 12, 0, 5),
        }
        data.update(overrides)
        return SweepRecord(**data)

    return _make
