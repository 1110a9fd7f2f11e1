"""Path representation, simulation, functionals and path transforms."""

from .engine import (
    DEFAULT_SETTINGS,
    HorizonPolicy,
    SimulationSettings,
    StopRule,
    bridge_extrema,
    extend_path,
    sample_increments,
    simulate_path,
)
from .functionals import (
    PathStats,
    first_passage_above,
    first_passage_below,
    infimum,
    last_above,
    last_below,
    occupation_above,
    path_stats,
    supremum,
)
from .grid import DEAD, PathGrid, PathLike, SampledPath, TwoSidedPath, as_grid, is_dead
from .transforms import (
    reverse_path,
    reversed_pre_maximum,
    shift_at_entrance,
    shift_at_supremum,
    shift_kill,
)

__all__ = [
    "DEAD",
    "DEFAULT_SETTINGS",
    "HorizonPolicy",
    "PathGrid",
    "PathLike",
    "PathStats",
    "SampledPath",
    "SimulationSettings",
    "StopRule",
    "TwoSidedPath",
    "as_grid",
    "bridge_extrema",
    "extend_path",
    "first_passage_above",
    "first_passage_below",
    "infimum",
    "is_dead",
    "last_above",
    "last_below",
    "occupation_above",
    "path_stats",
    "reverse_path",
    "reversed_pre_maximum",
    "sample_increments",
    "shift_at_entrance",
    "shift_at_supremum",
    "shift_kill",
    "simulate_path",
    "supremum",
]
