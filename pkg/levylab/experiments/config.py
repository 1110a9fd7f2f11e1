"""Experiment configuration files (JSON, YAML also accepted)."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple, TypeVar, Union

import yaml

from ..models.cramer import validate_model
from ..models.levy_model import LevyModel
from ..paths.engine import SimulationSettings
from ..samplers.conditioned import Horizons
from ..utils.config import ConfigManager
from ..utils.exceptions import ConfigurationError, ValidationError
from ..utils.validators import Validators

T = TypeVar('T')

KNOWN_FIELDS = {
    'experiment', 'model', 'seed', 'replicates', 'step', 'x_ladder', 'levels',
    'horizons', 'output', 'params', 'write_ensembles', 'workers',
}


def _checked(fn: Callable[..., T], *args: Any) -> T:
    """Run a field validator; its message already names the field."""
    try:
        return fn(*args)
    except ValidationError as e:
        raise ConfigurationError(str(e)) from e


def _horizon(value: Any, name: str) -> Optional[float]:
    return None if value is None else _checked(Validators.validate_positive, value, name)


def _reals(value: Any, name: str) -> Tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise ConfigurationError(f"{name}: expected a list of numbers")
    return tuple(_checked(Validators.validate_real, v, name) for v in value)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment run.

    Attributes:
        experiment: Catalog name
        model: Validated model
        seed: Master seed
        replicates: Main ensemble size (at least 100)
        step: Grid spacing
        x_ladder: Negative, strictly decreasing starting levels
        levels: Experiment-specific levels
        horizons: Lengths kept around the origin of two-sided samples
        output: Report directory
        params: Experiment-specific parameters
        write_ensembles: Also write the raw ensembles
        workers: Worker processes; None defers to the environment and config
    """
    experiment: str
    model: LevyModel
    seed: int
    replicates: int
    step: float = 0.01
    x_ladder: Tuple[float, ...] = ()
    levels: Tuple[float, ...] = ()
    horizons: Horizons = Horizons()
    output: Path = Path('./results')
    params: Dict[str, Any] = field(default_factory=dict)
    write_ensembles: bool = False
    workers: Optional[int] = None

    @classmethod
    def from_dict(cls, data: Mapping[str, Any],
                  config_manager: Optional[ConfigManager] = None) -> "ExperimentConfig":
        """Parse and validate a configuration mapping.

        Raises:
            ConfigurationError: Naming the first offending field
            ModelError: If the model violates a standing assumption
        """
        if not isinstance(data, Mapping):
            raise ConfigurationError("configuration must be a JSON object")
        unknown = set(data) - KNOWN_FIELDS
        if unknown:
            raise ConfigurationError(f"unknown fields {sorted(unknown)}")
        for name in ('experiment', 'model', 'seed', 'replicates'):
            if name not in data:
                raise ConfigurationError(f"{name}: missing")

        experiment = data['experiment']
        if not isinstance(experiment, str) or not experiment:
            raise ConfigurationError(f"experiment: expected a name, got {experiment!r}")

        _checked(Validators.validate_model_description, data['model'])
        model = validate_model(LevyModel.from_dict(data['model']))

        config = config_manager or ConfigManager()
        step = _checked(Validators.validate_positive,
                        data.get('step', config.get('simulation.step', 0.01)), 'step')

        horizons_data = data.get('horizons') or {}
        if not isinstance(horizons_data, Mapping):
            raise ConfigurationError("horizons: expected an object with backward/forward")
        horizons = Horizons(_horizon(horizons_data.get('backward'), 'horizons.backward'),
                            _horizon(horizons_data.get('forward'), 'horizons.forward'))

        params = data.get('params') or {}
        if not isinstance(params, Mapping):
            raise ConfigurationError("params: expected an object")

        workers = data.get('workers')
        if workers is not None and (isinstance(workers, bool) or not isinstance(workers, int)
                                    or workers < 1):
            raise ConfigurationError(f"workers: must be a positive integer, got {workers!r}")

        output = data.get('output') or Path(config.get('defaults.output_dir', './results')) / experiment

        return cls(
            experiment=experiment,
            model=model,
            seed=_checked(Validators.validate_seed, data['seed']),
            replicates=_checked(Validators.validate_replicates, data['replicates']),
            step=step,
            x_ladder=_checked(Validators.validate_x_ladder, _reals(data.get('x_ladder', []), 'x_ladder')),
            levels=_reals(data.get('levels', []), 'levels'),
            horizons=horizons,
            output=Path(output),
            params=dict(params),
            write_ensembles=bool(data.get('write_ensembles', False)),
            workers=workers,
        )

    @classmethod
    def from_file(cls, file_path: Union[str, Path],
                  config_manager: Optional[ConfigManager] = None) -> "ExperimentConfig":
        """Load a JSON (or YAML) configuration file.

        Raises:
            ConfigurationError: If the file cannot be read or parsed
        """
        path = Path(file_path)
        try:
            with open(path, 'r', encoding='utf-8') as f:
                if path.suffix.lower() in {'.yaml', '.yml'}:
                    data = yaml.safe_load(f)
                else:
                    data = json.load(f)
        except (OSError, json.JSONDecodeError, yaml.YAMLError) as e:
            raise ConfigurationError(f"cannot read configuration {path}: {e}")
        return cls.from_dict(data, config_manager)

    def settings(self, config_manager: Optional[ConfigManager] = None) -> SimulationSettings:
        """Simulation settings: ``simulation.*`` keys with this run's step."""
        return SimulationSettings.from_config(config_manager or ConfigManager(), step=self.step)

    def param(self, name: str, default: T) -> T:
        return self.params.get(name, default)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'experiment': self.experiment,
            'model': self.model.to_dict(),
            'seed': self.seed,
            'replicates': self.replicates,
            'step': self.step,
            'x_ladder': list(self.x_ladder),
            'levels': list(self.levels),
            'horizons': {'backward': self.horizons.backward, 'forward': self.horizons.forward},
            'output': str(self.output),
            'params': dict(self.params),
            'write_ensembles': self.write_ensembles,
        }
