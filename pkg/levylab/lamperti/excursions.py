"""Excursions of the positive self-similar Markov process X = exp(ξ∘γ).

Two constructions are provided: the Lamperti image of a two-sided 𝒫 path,
and the decomposition at the maximum built from independent η↓ and η̃↑
paths scaled to a given height.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from ..models.levy_model import LevyModel
from ..paths.engine import DEFAULT_SETTINGS, SimulationSettings
from ..paths.functionals import supremum
from ..paths.grid import PathLike, as_grid
from ..samplers.conditioned import sample_P_down, sample_Ptilde_up
from ..utils.exceptions import ValidationError
from .clock import lamperti_clock


@dataclass(frozen=True, eq=False)
class Excursion:
    """Excursion away from 0 sampled on the image of the path grid.

    Attributes:
        times: Increasing excursion times in [0, duration]
        values: X at those times, positive
        height: H = sup X
        duration: ζ
        argmax: λ, first time X reaches H
        clock_total: Unscaled exponential integral(s) used by the construction
        clocks: The individual integrals by name
    """
    times: np.ndarray
    values: np.ndarray
    height: float
    duration: float
    argmax: float
    clock_total: float
    clocks: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.times.size != self.values.size:
            raise ValidationError("times and values must have the same length")
        if not np.all(self.values > 0):
            raise ValidationError("excursion values must be positive")

    @property
    def endpoint_values(self) -> tuple:
        return float(self.values[0]), float(self.values[-1])

    def scaled(self, c: float) -> "Excursion":
        """The excursion t ↦ cX_{t/c}."""
        if not c > 0:
            raise ValidationError(f"scale must be positive, got {c}")
        return Excursion(self.times * c, self.values * c, self.height * c,
                         self.duration * c, self.argmax * c, self.clock_total,
                         dict(self.clocks))


def excursion_from_two_sided(sample: PathLike) -> Excursion:
    """Lamperti image of a two-sided path: X_t = exp(ξ_{γ̄(t)}) for 0 < t < Ī.

    H > 1 exactly when sup ξ > 0; the maximum is inserted into the grid so
    that ``height`` equals the largest stored value.

    Raises:
        LampertiError: If the clock is degenerate
    """
    grid = as_grid(sample)
    sup, sigma = supremum(grid)
    grid = grid.split_at(sigma, sup, 'peak')
    clock = lamperti_clock(grid, sign=1)
    total = clock.total
    return Excursion(
        times=clock.cumulative.copy(),
        values=np.exp(grid.values),
        height=float(np.exp(sup)),
        duration=total,
        argmax=float(clock.clock(sigma)),
        clock_total=total,
        clocks={'I_bar': total},
    )


def excursion_williams(model: LevyModel, y: float, rng: np.random.Generator,
                       settings: SimulationSettings = DEFAULT_SETTINGS,
                       horizon: Optional[float] = None) -> Excursion:
    """Excursion conditioned on H = y, built around its maximum.

    The rise comes from η̃↑ ~ P̃↑ through the clock ∫exp(−η̃↑), the descent
    from η↓ ~ P↓ through ∫exp(η↓); the glued process Y is rescaled to
    (yY_{t/y}) and re-origined so that it starts at time 0.

    Args:
        model: Model satisfying the standing assumptions
        y: Height of the excursion
        rng: Random substream
        settings: Simulation settings
        horizon: Optional length of both conditioned paths
    """
    if not (np.isfinite(y) and y > 0):
        raise ValidationError(f"y must be a positive real, got {y}")
    down = sample_P_down(model, rng, horizon, settings)
    up = sample_Ptilde_up(model, rng, horizon, settings=settings)
    down_clock = lamperti_clock(down, sign=1)
    up_clock = lamperti_clock(up, sign=-1)
    i_down, i_up = down_clock.total, up_clock.total

    rise_times = y * (i_up - up_clock.cumulative[::-1])
    rise_values = y * np.exp(-up.left_values[::-1])
    fall_times = y * (i_up + down_clock.cumulative)
    fall_values = y * np.exp(down.values)
    return Excursion(
        times=np.concatenate([rise_times[:-1], fall_times]),
        values=np.concatenate([rise_values[:-1], fall_values]),
        height=float(y),
        duration=float(y * (i_up + i_down)),
        argmax=float(y * i_up),
        clock_total=i_up + i_down,
        clocks={'I_down': i_down, 'I_tilde_up': i_up},
    )
