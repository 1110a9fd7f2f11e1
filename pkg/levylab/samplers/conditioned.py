"""Laws conditioned to keep one sign: P↓ and P̃↑.

Both are realized path-wise as post-extremum segments: the part of a P-path
after its overall supremum (minus the supremum) has law P↓, and the part of a
P̃-path after its overall infimum (minus the infimum) has law P̃↑.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..models.cramer import esscher_tilt, validate_model
from ..models.levy_model import LevyModel
from ..paths.engine import (
    DEFAULT_SETTINGS,
    HorizonPolicy,
    SimulationSettings,
    StopRule,
    extend_path,
    simulate_path,
)
from ..paths.functionals import infimum, supremum
from ..paths.grid import SampledPath
from ..utils.exceptions import RejectionBudgetError, ValidationError


@dataclass(frozen=True)
class Horizons:
    """Lengths kept on each side of a two-sided path; None keeps the natural
    adaptive length."""
    backward: Optional[float] = None
    forward: Optional[float] = None

    @classmethod
    def default_for(cls, model: LevyModel) -> "Horizons":
        """20 mean-drift time units on each side."""
        model = validate_model(model)
        assert model.tilted_mean is not None
        return cls(backward=20.0 / model.tilted_mean, forward=20.0 / abs(model.mean))


def fit_horizon(path: SampledPath, model: LevyModel, rng: np.random.Generator,
                horizon: Optional[float], settings: SimulationSettings = DEFAULT_SETTINGS,
                upper: Optional[float] = None, lower: Optional[float] = None) -> SampledPath:
    """Truncate or extend ``path`` to exactly ``horizon``.

    An extension is redrawn until it respects the bounds ``upper``/``lower``,
    which keeps conditioned paths on their side of 0.

    Raises:
        RejectionBudgetError: If no admissible extension was found
    """
    if horizon is None:
        return path
    if path.end >= horizon:
        killed = path.truncate(horizon)
        assert killed is not None
        return killed
    for _ in range(settings.rejection_budget):
        extended = extend_path(path, model, rng, horizon, settings)
        tail = extended.slice(path.n_points - 1, extended.n_points)
        if upper is not None and max(tail.grid_max, float(tail.bridge_max.max())) > upper:
            continue
        if lower is not None and min(float(tail.values.min()), float(tail.bridge_min.min())) < lower:
            continue
        return extended
    raise RejectionBudgetError(f"no admissible extension to horizon {horizon:g}")


def sample_P_down(model: LevyModel, rng: np.random.Generator,
                  horizon: Optional[float] = None,
                  settings: SimulationSettings = DEFAULT_SETTINGS) -> SampledPath:
    """Draw η↓ ~ P↓: the post-supremum segment of a P-path minus its supremum.

    Args:
        model: Model satisfying the standing assumptions
        rng: Random substream
        horizon: Length of the returned path; natural adaptive length if None
        settings: Simulation settings

    Returns:
        Path starting at 0 and staying ≤ 0
    """
    model = validate_model(model)
    policy = HorizonPolicy.adaptive(min_after_max=horizon or 0.0)
    path = simulate_path(model, rng, policy, settings=settings)
    sup, sigma = supremum(path)
    post = SampledPath.from_grid(path.segment_from(sigma, sup, 'peak').offset(-sup),
                                 settings.step, path.stop_reason)
    return fit_horizon(post, model, rng, horizon, settings, upper=0.0)


def sample_Ptilde_up(model: LevyModel, rng: np.random.Generator,
                     horizon: Optional[float] = None, min_final_level: float = 0.0,
                     settings: SimulationSettings = DEFAULT_SETTINGS) -> SampledPath:
    """Draw η̃↑ ~ P̃↑: the post-infimum segment of a P̃-path minus its infimum.

    Args:
        model: Model satisfying the standing assumptions (the tilt is applied here)
        rng: Random substream
        horizon: Length of the returned path; natural adaptive length if None
        min_final_level: The natural path ends at least K above this level,
            so last passages below it are complete
        settings: Simulation settings

    Returns:
        Path starting at 0 and staying ≥ 0
    """
    model = validate_model(model)
    assert model.theta is not None
    tilted = esscher_tilt(model)
    policy = HorizonPolicy(StopRule.RISE_ABOVE_MIN, margin=settings.margin(model.theta),
                           clearance=max(0.0, float(min_final_level)),
                           min_after_extreme=horizon or 0.0)
    path = simulate_path(tilted, rng, policy, settings=settings)
    inf, argmin = infimum(path)
    post = SampledPath.from_grid(path.segment_from(argmin, inf, 'trough').offset(-inf),
                                 settings.step, path.stop_reason)
    return fit_horizon(post, tilted, rng, horizon, settings, lower=0.0)


def sample_Ptilde_up_from(model: LevyModel, x: float, rng: np.random.Generator,
                          horizon: Optional[float] = None,
                          settings: SimulationSettings = DEFAULT_SETTINGS) -> SampledPath:
    """Draw from P̃↑_x = P̃_x(· | inf ξ > 0) by rejection; x = 0 uses the limit law.

    Each attempt runs −ξ under the tilted law and stops early once ξ goes
    negative, so rejected attempts are cheap.

    Raises:
        ValidationError: If x is negative
        RejectionBudgetError: If no attempt stayed positive within the budget
    """
    if not x >= 0:
        raise ValidationError(f"x must be nonnegative, got {x}")
    if x == 0:
        return sample_Ptilde_up(model, rng, horizon, settings=settings)
    model = validate_model(model)
    assert model.theta is not None
    tilted = esscher_tilt(model)
    mirrored = tilted.negated()
    policy = HorizonPolicy.passage(0.0, give_up_below_max=True,
                                  margin=settings.margin(model.theta))
    for _ in range(settings.rejection_budget):
        attempt = simulate_path(mirrored, rng, policy, start=-x, settings=settings)
        if attempt.stop_reason == StopRule.PASSAGE.value:
            continue
        path = SampledPath.from_grid(attempt.negate(), settings.step, attempt.stop_reason)
        return fit_horizon(path, tilted, rng, horizon, settings, lower=0.0)
    raise RejectionBudgetError(
        f"no path from x={x:g} stayed positive in {settings.rejection_budget} attempts")
