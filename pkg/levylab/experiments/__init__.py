"""Named, reproducible experiments and their runner."""

from .catalog import CATALOG, Experiment, ExperimentContext, get_experiment, list_experiments, run_experiment
from .config import ExperimentConfig
from .report import Ensemble, ExperimentReport
from .runner import ExperimentRunner

__all__ = [
    "CATALOG",
    "Ensemble",
    "Experiment",
    "ExperimentConfig",
    "ExperimentContext",
    "ExperimentReport",
    "ExperimentRunner",
    "get_experiment",
    "list_experiments",
    "run_experiment",
]
