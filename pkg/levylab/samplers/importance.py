"""Conditioned pre-limit law P_x(· | sup ξ > 0): Esscher importance sampling
and the direct rejection oracle."""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ..models.cramer import esscher_tilt, validate_model
from ..models.levy_model import LevyModel
from ..paths.engine import (
    DEFAULT_SETTINGS,
    HorizonPolicy,
    SimulationSettings,
    StopRule,
    simulate_path,
)
from ..paths.functionals import supremum
from ..paths.grid import SampledPath, TwoSidedPath
from ..paths.transforms import shift_at_entrance, shift_at_supremum, shift_kill
from ..utils.exceptions import RejectionBudgetError, ValidationError
from .conditioned import Horizons, fit_horizon

SHIFTS = ('tau', 'sigma')


@dataclass(frozen=True)
class WeightedPath:
    """Importance-sampled path with its likelihood-ratio weight.

    Attributes:
        path: Path shifted at its first entrance τ into (0, ∞)
        weight: e^{−θξ_τ}, in (0, 1]
        start: Starting level x
    """
    path: TwoSidedPath
    weight: float
    start: float = 0.0

    def __post_init__(self) -> None:
        if not (0 < self.weight <= 1.0):
            raise ValidationError(f"Esscher weight must lie in (0, 1], got {self.weight}")

    @property
    def overshoot(self) -> float:
        return float(self.path.value_at_zero)

    @property
    def entrance_time(self) -> float:
        """τ on the original clock (the path starts at time 0)."""
        return -self.path.life_interval[0]


class CramerEstimate(NamedTuple):
    """Estimate of e^{−θx}P_x(sup ξ > 0, σ ≥ t_min) with its standard error."""
    value: float
    se: float
    n: int


def _check_start(x: float) -> None:
    if not (math.isfinite(x) and x < 0):
        raise ValidationError(f"x must be a negative real, got {x}")


def sample_conditioned_IS(model: LevyModel, x: float, rng: np.random.Generator,
                          horizons: Optional[Horizons] = None,
                          settings: SimulationSettings = DEFAULT_SETTINGS) -> WeightedPath:
    """Weighted draw targeting P_x(· | sup ξ > 0).

    The path runs under P̃_x up to τ, collects the weight e^{−θξ_τ} and then
    continues under P. Self-normalized weights give the conditioned law;
    the raw weight mean estimates e^{−θx}P_x(sup ξ > 0).

    Args:
        model: Model satisfying the standing assumptions
        x: Negative starting level
        rng: Random substream
        horizons: Lengths kept around τ; natural lengths if None
        settings: Simulation settings
    """
    _check_start(x)
    model = validate_model(model)
    assert model.theta is not None
    horizons = horizons or Horizons()

    pre = simulate_path(esscher_tilt(model), rng, HorizonPolicy.passage(0.0),
                        start=x, settings=settings)
    landing = float(pre.values[-1])
    post = simulate_path(model, rng, HorizonPolicy.adaptive(floor=0.0),
                         start=landing, settings=settings)
    full = pre.concat(post.shift_time(pre.end))
    shifted = shift_kill(full, pre.end)
    return WeightedPath(_fit_two_sided(shifted, model, rng, horizons, settings),
                        math.exp(-model.theta * landing), start=x)


def _fit_two_sided(path: TwoSidedPath, model: LevyModel, rng: np.random.Generator,
                   horizons: Horizons, settings: SimulationSettings) -> TwoSidedPath:
    backward = path.backward
    if backward is not None and horizons.backward is not None:
        backward = backward.truncate(horizons.backward)
    forward = path.forward
    if forward is not None:
        forward = fit_horizon(forward, model, rng, horizons.forward, settings)
    return TwoSidedPath(backward, forward)


def cramer_estimate(model: LevyModel, x: float, rng: np.random.Generator, n: int,
                    t_min: float = 0.0,
                    settings: SimulationSettings = DEFAULT_SETTINGS) -> CramerEstimate:
    """Importance-sampling estimate of e^{−θx}P_x(sup ξ > 0, σ ≥ t_min).

    It tends to the Cramér constant C as x → −∞, for every t_min.
    """
    if n < 2:
        raise ValidationError(f"n must be at least 2, got {n}")
    values = np.empty(n)
    for i in range(n):
        draw = sample_conditioned_IS(model, x, rng, settings=settings)
        sigma = supremum(draw.path.grid)[1] + draw.entrance_time
        values[i] = draw.weight if sigma >= t_min else 0.0
    return CramerEstimate(float(values.mean()), float(values.std(ddof=1) / math.sqrt(n)), n)


def _passage_or_give_up(model: LevyModel, x: float, rng: np.random.Generator,
                        settings: SimulationSettings) -> SampledPath:
    return simulate_path(model, rng, HorizonPolicy.passage(0.0, give_up_below_max=True),
                         start=x, settings=settings)


def sample_conditioned_rejection(model: LevyModel, x: float, rng: np.random.Generator,
                                 shift: str = 'tau', horizons: Optional[Horizons] = None,
                                 settings: SimulationSettings = DEFAULT_SETTINGS) -> TwoSidedPath:
    """Exact draw from P_x(· | sup ξ > 0) by rejection, shifted at τ or at σ.

    Args:
        model: Model satisfying the standing assumptions
        x: Negative starting level (acceptance ≈ C e^{θx})
        rng: Random substream
        shift: ``'tau'`` or ``'sigma'``
        horizons: Lengths kept around the shift time; natural lengths if None
        settings: Simulation settings; ``rejection_budget`` bounds the attempts

    Raises:
        RejectionBudgetError: If no attempt reached (0, ∞)
    """
    _check_start(x)
    if shift not in SHIFTS:
        raise ValidationError(f"shift must be one of {SHIFTS}, got {shift!r}")
    model = validate_model(model)
    horizons = horizons or Horizons()
    for _ in range(settings.rejection_budget):
        head = _passage_or_give_up(model, x, rng, settings)
        if head.stop_reason != StopRule.PASSAGE.value:
            continue
        tail = simulate_path(model, rng, HorizonPolicy.adaptive(floor=0.0),
                             start=float(head.values[-1]), settings=settings)
        full = head.concat(tail.shift_time(head.end))
        shifted = shift_at_entrance(full) if shift == 'tau' else shift_at_supremum(full)
        return _fit_two_sided(shifted, model, rng, horizons, settings)
    raise RejectionBudgetError(
        f"no path from x={x:g} exceeded 0 in {settings.rejection_budget} attempts")


def acceptance_frequency(model: LevyModel, x: float, rng: np.random.Generator,
                         attempts: int,
                         settings: SimulationSettings = DEFAULT_SETTINGS) -> float:
    """Fraction of P_x paths whose supremum exceeds 0."""
    _check_start(x)
    model = validate_model(model)
    hits = sum(_passage_or_give_up(model, x, rng, settings).stop_reason == StopRule.PASSAGE.value
               for _ in range(attempts))
    return hits / attempts

