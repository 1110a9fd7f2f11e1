"""Tests for settings, validators and experiment configuration files."""

import json
import tempfile
from pathlib import Path

import pytest

from levylab.experiments import ExperimentConfig
from levylab.models import DriftError
from levylab.paths import SimulationSettings
from levylab.utils.config import ConfigManager
from levylab.utils.exceptions import ConfigurationError, ValidationError
from levylab.utils.validators import Validators

CONFIG_DIR = Path(__file__).resolve().parents[1] / 'config'

BM = {"drift": -1.0, "sigma": 1.0, "jumps": []}


def _config(**overrides):
    data = {"experiment": "exp_supremum", "model": BM, "seed": 1, "replicates": 100}
    data.update(overrides)
    return data


class TestConfigManager:
    """Test cases for layered settings."""

    @pytest.fixture(autouse=True)
    def clean_environment(self, monkeypatch):
        for name in ConfigManager.ENV_MAPPINGS:
            monkeypatch.delenv(name, raising=False)

    def test_defaults(self):
        """Test built-in defaults."""
        config = ConfigManager()
        assert config.get('simulation.step') == 0.01
        assert config.get('stats.min_ess') == 100
        assert config.get('parallel.workers') is None
        assert config.get('missing.key', 'fallback') == 'fallback'
        config.validate()

    def test_shipped_settings_file(self):
        """Test that the shipped settings file loads and validates."""
        config = ConfigManager(str(CONFIG_DIR / 'default_config.yaml'))
        assert config.get('simulation.stop_decades') == 6.0
        config.validate()

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv('LEVYLAB_WORKERS', '3')
        monkeypatch.setenv('LEVYLAB_STEP', '0.005')
        config = ConfigManager()
        assert config.get('parallel.workers') == 3
        assert config.get('simulation.step') == 0.005

    def test_environment_must_parse(self, monkeypatch):
        monkeypatch.setenv('LEVYLAB_WORKERS', 'many')
        with pytest.raises(ConfigurationError, match="LEVYLAB_WORKERS"):
            ConfigManager()

    def test_file_merges_over_defaults(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / 'settings.json'
            path.write_text(json.dumps({'simulation': {'step': 0.05}}))
            config = ConfigManager(str(path))
        assert config.get('simulation.step') == 0.05
        assert config.get('simulation.stop_decades') == 6.0

    def test_log_level_from_environment(self, monkeypatch):
        assert ConfigManager().get('defaults.log_level') == 'WARNING'
        monkeypatch.setenv('LEVYLAB_LOG_LEVEL', 'debug')
        config = ConfigManager()
        assert config.get('defaults.log_level') == 'DEBUG'
        config.validate()

    def test_validate_rejects_unknown_log_level(self, monkeypatch):
        monkeypatch.setenv('LEVYLAB_LOG_LEVEL', 'loud')
        with pytest.raises(ConfigurationError, match="Invalid log level"):
            ConfigManager().validate()

    def test_bad_files(self):
        with pytest.raises(ConfigurationError, match="not found"):
            ConfigManager('/nonexistent/settings.yaml')
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / 'settings.ini'
            path.write_text('[simulation]')
            with pytest.raises(ConfigurationError, match="Unsupported"):
                ConfigManager(str(path))

    def test_validate_rejects_bad_values(self):
        config = ConfigManager()
        config.set('simulation.step', -1)
        with pytest.raises(ConfigurationError, match="simulation.step"):
            config.validate()
        config = ConfigManager()
        config.set('stats.null_quantile', 1.5)
        with pytest.raises(ConfigurationError, match="null_quantile"):
            config.validate()

    def test_simulation_settings_from_config(self):
        config = ConfigManager()
        config.set('simulation.stop_decades', 4.0)
        settings = SimulationSettings.from_config(config, step=0.02)
        assert settings.step == 0.02
        assert settings.stop_decades == 4.0


class TestValidators:
    """Test cases for input validators."""

    def test_real_and_positive(self):
        assert Validators.validate_real(3, 'x') == 3.0
        with pytest.raises(ValidationError, match="x: expected a number"):
            Validators.validate_real(True, 'x')
        with pytest.raises(ValidationError, match="finite"):
            Validators.validate_real(float('nan'), 'x')
        with pytest.raises(ValidationError, match="positive"):
            Validators.validate_positive(0, 'step')

    def test_model_description(self):
        Validators.validate_model_description({"drift": -2.0, "sigma": 1.0,
                                               "jumps": [{"rate": 1.0, "beta": 3.0, "sign": 1}]})
        with pytest.raises(ValidationError, match="model.sigma: missing"):
            Validators.validate_model_description({"drift": -1.0})
        with pytest.raises(ValidationError, match="unknown keys"):
            Validators.validate_model_description({**BM, "alpha": 1.0})
        with pytest.raises(ValidationError, match=r"jumps\[0\].sign"):
            Validators.validate_model_description(
                {**BM, "jumps": [{"rate": 1.0, "beta": 3.0, "sign": 0}]})
        with pytest.raises(ValidationError, match=r"jumps\[0\].beta"):
            Validators.validate_model_description(
                {**BM, "jumps": [{"rate": 1.0, "beta": -3.0, "sign": 1}]})

    def test_seed_and_replicates(self):
        assert Validators.validate_seed(2 ** 64 - 1) == 2 ** 64 - 1
        with pytest.raises(ValidationError):
            Validators.validate_seed(-1)
        with pytest.raises(ValidationError, match="at least 100"):
            Validators.validate_replicates(99)

    def test_x_ladder(self):
        assert Validators.validate_x_ladder([-2, -4, -6]) == (-2.0, -4.0, -6.0)
        with pytest.raises(ValidationError, match="negative"):
            Validators.validate_x_ladder([-2.0, 0.0])
        with pytest.raises(ValidationError, match="decreasing"):
            Validators.validate_x_ladder([-4.0, -2.0])

    def test_paths(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Validators.validate_output_directory(Path(tmpdir) / 'a' / 'b')
            assert out.is_dir()
            with pytest.raises(ValidationError, match="does not exist"):
                Validators.validate_file_path(Path(tmpdir) / 'missing.json')
            with pytest.raises(ValidationError, match="not a file"):
                Validators.validate_file_path(tmpdir)


class TestExperimentConfig:
    """Test cases for experiment configuration files."""

    def test_minimal(self):
        config = ExperimentConfig.from_dict(_config())
        assert config.model.theta == pytest.approx(2.0)
        assert config.step == 0.01
        assert config.output == Path('./results') / 'exp_supremum'
        assert config.horizons.backward is None
        assert not config.write_ensembles

    @pytest.mark.parametrize("field", ["experiment", "model", "seed", "replicates"])
    def test_required_fields(self, field):
        data = _config()
        del data[field]
        with pytest.raises(ConfigurationError, match=f"{field}: missing"):
            ExperimentConfig.from_dict(data)

    def test_unknown_field(self):
        with pytest.raises(ConfigurationError, match="unknown fields"):
            ExperimentConfig.from_dict(_config(theta=2.0))

    @pytest.mark.parametrize("overrides, message", [
        ({"replicates": 10}, "replicates"),
        ({"seed": "seven"}, "seed"),
        ({"step": 0}, "step"),
        ({"x_ladder": [-2, -1]}, "x_ladder"),
        ({"levels": "high"}, "levels"),
        ({"horizons": {"backward": -1}}, "horizons.backward"),
        ({"params": [1]}, "params"),
        ({"workers": 0}, "workers"),
    ])
    def test_field_errors_name_the_field(self, overrides, message):
        with pytest.raises(ConfigurationError, match=message):
            ExperimentConfig.from_dict(_config(**overrides))

    def test_model_assumptions_are_checked(self):
        with pytest.raises(DriftError):
            ExperimentConfig.from_dict(_config(model={"drift": 1.0, "sigma": 1.0}))

    def test_step_defaults_to_settings(self):
        settings = ConfigManager()
        settings.set('simulation.step', 0.02)
        assert ExperimentConfig.from_dict(_config(), settings).step == 0.02

    def test_unreadable_file(self):
        with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
            f.write('{not json')
        with pytest.raises(ConfigurationError, match="cannot read"):
            ExperimentConfig.from_file(f.name)
        Path(f.name).unlink()

    @pytest.mark.parametrize("path", sorted((CONFIG_DIR / 'experiments').glob('*.json')),
                             ids=lambda p: p.stem)
    def test_shipped_configurations_parse(self, path):
        config = ExperimentConfig.from_file(path)
        assert config.seed == 20240601
        assert config.replicates >= 100

    def test_to_dict(self):
        config = ExperimentConfig.from_dict(_config(levels=[0.5], params={"null_pairs": 5}))
        data = config.to_dict()
        assert data['levels'] == [0.5]
        assert data['params'] == {"null_pairs": 5}
        assert data['model']['drift'] == -1.0
