"""The two-sided limit laws 𝒫 (shift at first entrance) and 𝒬 (shift at the
supremum)."""

from typing import Optional

import numpy as np

from ..models.cramer import validate_model
from ..models.levy_model import LevyModel
from ..paths.engine import DEFAULT_SETTINGS, HorizonPolicy, SimulationSettings, simulate_path
from ..paths.grid import TwoSidedPath
from ..utils.exceptions import RejectionBudgetError
from ..utils.logger import Logger
from .conditioned import Horizons, fit_horizon, sample_P_down, sample_Ptilde_up, sample_Ptilde_up_from
from .overshoot import sample_rho

_PAIR_RETRIES = 10

logger = Logger(__name__)


def sample_script_P(model: LevyModel, rng: np.random.Generator,
                    horizons: Optional[Horizons] = None,
                    settings: SimulationSettings = DEFAULT_SETTINGS) -> TwoSidedPath:
    """Draw from 𝒫.

    Given (−ξ_{0−}, ξ_0) = (x, y) ~ ρ, the backward part follows P̃↑_x and
    the forward part follows P_y, independently.

    Args:
        model: Model satisfying the standing assumptions
        rng: Random substream
        horizons: Lengths kept on each side; natural adaptive lengths if None
        settings: Simulation settings

    Raises:
        RejectionBudgetError: If repeated (x, y) draws all exhaust the
            backward rejection budget
    """
    model = validate_model(model)
    horizons = horizons or Horizons()
    for retry in range(_PAIR_RETRIES):
        pair = sample_rho(model, rng, settings)
        try:
            backward = sample_Ptilde_up_from(model, pair.undershoot, rng,
                                             horizons.backward, settings)
        except RejectionBudgetError as e:
            logger.warning("Redrawing (x, y) after rejection budget", retry=retry, error=str(e))
            continue
        forward = simulate_path(model, rng, HorizonPolicy.adaptive(floor=0.0),
                                start=pair.overshoot, settings=settings)
        forward = fit_horizon(forward, model, rng, horizons.forward, settings)
        return TwoSidedPath(backward, forward)
    raise RejectionBudgetError(f"𝒫 sampler failed for {_PAIR_RETRIES} (x, y) draws")


def sample_script_Q(model: LevyModel, rng: np.random.Generator,
                    horizons: Optional[Horizons] = None,
                    settings: SimulationSettings = DEFAULT_SETTINGS) -> TwoSidedPath:
    """Draw from 𝒬: ξ_t = ε + η↓_t for t ≥ 0 and ξ_t = ε − η̃↑_{−t−} for t < 0,
    with ε ~ Exp(θ). The supremum ε is reached at time 0.

    The backward part ends at least K above ε, so the last passage of η̃↑
    below ε is complete.
    """
    model = validate_model(model)
    assert model.theta is not None
    horizons = horizons or Horizons()
    epsilon = float(rng.exponential(1.0 / model.theta))
    forward = sample_P_down(model, rng, horizons.forward, settings).offset(epsilon)
    backward = sample_Ptilde_up(model, rng, horizons.backward, min_final_level=epsilon,
                                settings=settings).offset(-epsilon)
    return TwoSidedPath(backward, forward)
