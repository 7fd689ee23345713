"""Unit tests for settings resolution."""

import json

import pytest

from paulilab.exceptions import ConfigNotFoundError, InvalidConfigError
from paulilab.models.constants import CONFIG_FILENAME
from paulilab.models.settings import ExperimentConfig, Settings, get_settings


@pytest.fixture
def isolated(temp_dir, monkeypatch):
    """Run from an empty directory with no global config."""
    monkeypatch.chdir(temp_dir)
    monkeypatch.setattr("paulilab.core.config_locator.user_config_dir", lambda _: str(temp_dir / "global"))
    return temp_dir


class TestGetSettings:
    """Tests for get_settings."""

    def test_defaults_without_config(self, isolated):
        """Test no file gives default settings without a config path."""
        settings = get_settings()

        assert settings.config_path is None
        assert settings.experiment == ExperimentConfig()
        assert settings.workers == 1

    def test_explicit_config(self, isolated, config_file):
        """Test an explicit file is loaded."""
        path = config_file()

        settings = get_settings(path)

        assert settings.config_path == path
        assert settings.experiment.seed == 7

    def test_local_config_discovery(self, isolated, small_experiment_data):
        """Test .paulilab.json in the working directory is found."""
        (isolated / CONFIG_FILENAME).write_text(json.dumps(small_experiment_data))

        assert get_settings().experiment.h_values == [1.0, 0.9, 0.8]

    def test_missing_explicit_config(self, isolated):
        """Test a missing explicit path raises."""
        with pytest.raises(ConfigNotFoundError):
            get_settings(isolated / "absent.json")

    def test_invalid_config(self, isolated, config_file):
        """Test an invalid file raises InvalidConfigError."""
        with pytest.raises(InvalidConfigError):
            get_settings(config_file(kappa_values=[]))

    def test_cached(self, isolated):
        """Test repeated calls return the same instance."""
        assert get_settings() is get_settings()

    def test_workers_from_environment(self, isolated, monkeypatch):
        """Test PAULILAB_WORKERS overrides the worker count."""
        monkeypatch.setenv("PAULILAB_WORKERS", "4")

        assert Settings().workers == 4


class TestExperimentConfig:
    """Tests for ExperimentConfig validation."""

    def test_points_order(self, small_experiment_data):
        """Test points run over h then kappa."""
        config = ExperimentConfig.model_validate({**small_experiment_data, "kappa_values": [0.5, 1.0]})

        assert config.points()[:3] == [(1.0, 0.5), (1.0, 1.0), (0.9, 0.5)]

    def test_empty_h_values(self, small_experiment_data):
        """Test an empty h list is refused."""
        with pytest.raises(ValueError):
            ExperimentConfig.model_validate({**small_experiment_data, "h_values": []})
