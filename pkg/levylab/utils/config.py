"""Configuration management for levylab."""

import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from .exceptions import ConfigurationError


class ConfigManager:
    """Configuration manager for levylab.

    Settings are layered: built-in defaults, then an optional YAML/JSON file,
    then ``LEVYLAB_*`` environment variables.
    """

    ENV_MAPPINGS = {
        'LEVYLAB_OUTPUT_DIR': 'defaults.output_dir',
        'LEVYLAB_LOG_LEVEL': 'defaults.log_level',
        'LEVYLAB_WORKERS': 'parallel.workers',
        'LEVYLAB_CHUNK_SIZE': 'parallel.chunk_size',
        'LEVYLAB_STEP': 'simulation.step',
    }

    INT_KEYS = {'parallel.workers', 'parallel.chunk_size'}
    FLOAT_KEYS = {'simulation.step'}

    def __init__(self, config_file: Optional[str] = None):
        """Initialize configuration manager.

        Args:
            config_file: Optional configuration file path
        """
        self.config_file = config_file
        self.config = self._load_default_config()

        if config_file:
            self.load_from_file(config_file)

        self._load_from_environment()

    def _load_default_config(self) -> Dict[str, Any]:
        """Load default configuration."""
        return {
            'defaults': {
                'output_dir': './results',
                'log_level': 'WARNING',
            },
            'simulation': {
                'step': 0.01,
                'stop_decades': 6.0,
                'chunk_steps': 4096,
                'max_time': 1.0e5,
                'rejection_budget': 100000,
                'rho_level_factor': 10.0,
            },
            'parallel': {
                'workers': None,
                'chunk_size': 256,
                'progress': False,
            },
            'stats': {
                'min_ess': 100,
                'null_quantile': 0.99,
                'null_factor': 1.5,
                'null_pairs': 20,
                'bootstrap': 200,
            },
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value.

        Args:
            key: Configuration key (supports dot notation)
            default: Default value if key not found

        Returns:
            Configuration value
        """
        value: Any = self.config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """Set configuration value.

        Args:
            key: Configuration key (supports dot notation)
            value: Value to set
        """
        keys = key.split('.')
        config = self.config
        for k in keys[:-1]:
            if k not in config or not isinstance(config[k], dict):
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value

    def load_from_file(self, file_path: str) -> None:
        """Load configuration from file.

        Args:
            file_path: Path to configuration file

        Raises:
            ConfigurationError: If file cannot be loaded
        """
        path = Path(file_path)
        if not path.exists():
            raise ConfigurationError(f"Configuration file not found: {file_path}")

        try:
            with open(path, 'r', encoding='utf-8') as f:
                if path.suffix.lower() in {'.yaml', '.yml'}:
                    file_config = yaml.safe_load(f) or {}
                elif path.suffix.lower() == '.json':
                    file_config = json.load(f)
                else:
                    raise ConfigurationError(
                        f"Unsupported configuration file format: {path.suffix}")
        except ConfigurationError:
            raise
        except Exception as e:
            raise ConfigurationError(f"Failed to load configuration from {file_path}: {e}")

        if not isinstance(file_config, dict):
            raise ConfigurationError(f"Configuration file must hold a mapping: {file_path}")
        self._merge_config(file_config)

    def _load_from_environment(self) -> None:
        """Load configuration from environment variables."""
        for env_var, config_key in self.ENV_MAPPINGS.items():
            value: Any = os.getenv(env_var)
            if value is None or value == '':
                continue
            if config_key in self.INT_KEYS:
                try:
                    value = int(value)
                except ValueError:
                    raise ConfigurationError(f"{env_var} must be an integer, got {value!r}")
            elif config_key == 'defaults.log_level':
                value = value.upper()
            elif config_key in self.FLOAT_KEYS:
                try:
                    value = float(value)
                except ValueError:
                    raise ConfigurationError(f"{env_var} must be a number, got {value!r}")
            self.set(config_key, value)

    def _merge_config(self, new_config: Dict[str, Any]) -> None:
        """Merge new configuration with existing config.

        Args:
            new_config: New configuration to merge
        """
        def merge_dict(base: Dict[str, Any], update: Dict[str, Any]) -> None:
            for key, value in update.items():
                if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                    merge_dict(base[key], value)
                else:
                    base[key] = copy.deepcopy(value)

        merge_dict(self.config, new_config)

    def get_simulation_config(self) -> Dict[str, Any]:
        """Get simulation configuration.

        Returns:
            Simulation configuration dictionary
        """
        return dict(self.get('simulation', {}))

    def get_stats_config(self) -> Dict[str, Any]:
        """Get statistics configuration.

        Returns:
            Statistics configuration dictionary
        """
        return dict(self.get('stats', {}))

    def validate(self) -> None:
        """Validate configuration.

        Raises:
            ConfigurationError: If configuration is invalid
        """
        for field in ('defaults.output_dir', 'defaults.log_level', 'simulation.step'):
            if self.get(field) is None:
                raise ConfigurationError(f"Required configuration field missing: {field}")

        log_level = self.get('defaults.log_level')
        valid_levels = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'}
        if log_level not in valid_levels:
            raise ConfigurationError(f"Invalid log level: {log_level}. Valid levels: {valid_levels}")

        positive = ('simulation.step', 'simulation.stop_decades', 'simulation.max_time',
                    'simulation.rho_level_factor', 'stats.null_factor')
        for field in positive:
            value = self.get(field)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or value <= 0:
                raise ConfigurationError(f"Invalid {field}: must be a positive number")

        for field in ('simulation.chunk_steps', 'simulation.rejection_budget',
                      'parallel.chunk_size', 'stats.min_ess', 'stats.null_pairs',
                      'stats.bootstrap'):
            value = self.get(field)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigurationError(f"Invalid {field}: must be a positive integer")

        workers = self.get('parallel.workers')
        if workers is not None and (not isinstance(workers, int) or workers < 1):
            raise ConfigurationError("Invalid parallel.workers: must be a positive integer")

        quantile = self.get('stats.null_quantile')
        if not isinstance(quantile, (int, float)) or not 0 < quantile < 1:
            raise ConfigurationError("Invalid stats.null_quantile: must lie in (0, 1)")
