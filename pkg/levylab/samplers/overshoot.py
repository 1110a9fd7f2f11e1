"""Stationary undershoot/overshoot laws ρ̃ and ρ, and the Cramér constants."""

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..models.cramer import CramerConstants, esscher_tilt, validate_model
from ..models.levy_model import LevyModel
from ..paths.engine import DEFAULT_SETTINGS, HorizonPolicy, SimulationSettings, simulate_path
from ..utils.exceptions import RejectionBudgetError, ValidationError


@dataclass(frozen=True)
class OvershootPair:
    """(undershoot, overshoot) at a first passage.

    Attributes:
        undershoot: Distance −ξ_{τ−} below the level just before passage
        overshoot: ξ_τ above the level
        weight: Importance weight, 1 for unweighted draws
        attempts: Proposals used to produce this draw (rejection samplers)
    """
    undershoot: float
    overshoot: float
    weight: float = 1.0
    attempts: int = 1

    def __post_init__(self) -> None:
        if not (self.undershoot >= 0 and self.overshoot >= 0):
            raise ValidationError("undershoot and overshoot must be nonnegative")
        if not (self.weight > 0 and math.isfinite(self.weight)):
            raise ValidationError(f"weight must be positive, got {self.weight}")


def sample_rho_tilde(model: LevyModel, rng: np.random.Generator,
                     level: Optional[float] = None,
                     settings: SimulationSettings = DEFAULT_SETTINGS) -> OvershootPair:
    """Draw from ρ̃ by running the tilted model from 0 to a high level.

    Args:
        model: Model satisfying the standing assumptions
        rng: Random substream
        level: Passage level; ``rho_level_factor/θ`` by default
        settings: Simulation settings
    """
    model = validate_model(model)
    assert model.theta is not None
    if level is None:
        level = settings.rho_level_factor / model.theta
    path = simulate_path(esscher_tilt(model), rng, HorizonPolicy.passage(level),
                         settings=settings)
    return OvershootPair(
        undershoot=max(0.0, level - float(path.left_values[-1])),
        overshoot=max(0.0, float(path.values[-1]) - level),
    )


def sample_rho(model: LevyModel, rng: np.random.Generator,
               settings: SimulationSettings = DEFAULT_SETTINGS) -> OvershootPair:
    """Draw from ρ: accept a ρ̃ draw with probability e^{−θ·overshoot}.

    Raises:
        RejectionBudgetError: If the attempt budget is exhausted
    """
    model = validate_model(model)
    assert model.theta is not None
    for attempt in range(1, settings.rejection_budget + 1):
        pair = sample_rho_tilde(model, rng, settings=settings)
        if rng.random() < math.exp(-model.theta * pair.overshoot):
            return OvershootPair(pair.undershoot, pair.overshoot, attempts=attempt)
    raise RejectionBudgetError(f"ρ sampler rejected {settings.rejection_budget} proposals")


def estimate_cramer_constants(model: LevyModel, rng: np.random.Generator, n: int,
                              bootstrap: int = 200,
                              settings: SimulationSettings = DEFAULT_SETTINGS) -> CramerConstants:
    """Estimate C and c(θ) with bootstrap standard errors.

    C is the ρ̃-mean of e^{−θ·overshoot}; c(θ) is the mean number of ρ̃
    proposals per accepted ρ draw. Their product is 1.

    Args:
        model: Model satisfying the standing assumptions
        rng: Random substream
        n: Draws of each sampler
        bootstrap: Bootstrap resamples for the standard errors
        settings: Simulation settings
    """
    if n < 2 or bootstrap < 2:
        raise ValidationError(f"n and bootstrap must be at least 2, got {n} and {bootstrap}")
    model = validate_model(model)
    assert model.theta is not None
    theta = model.theta
    weights = np.array([math.exp(-theta * sample_rho_tilde(model, rng, settings=settings).overshoot)
                        for _ in range(n)])
    attempts = np.array([sample_rho(model, rng, settings).attempts for _ in range(n)], dtype=float)
    return cramer_constants_from(weights, attempts, rng, bootstrap)


def cramer_constants_from(weights: Sequence[float], attempts: Sequence[float],
                          rng: np.random.Generator, bootstrap: int = 200) -> CramerConstants:
    """C and c(θ) from ρ̃ weights e^{−θ·overshoot} and ρ attempt counts."""
    weights = np.asarray(weights, dtype=float)
    attempts = np.asarray(attempts, dtype=float)
    if weights.size < 2 or attempts.size < 2 or bootstrap < 2:
        raise ValidationError("need at least two draws of each sampler and two resamples")
    idx_w = rng.integers(0, weights.size, size=(bootstrap, weights.size))
    idx_a = rng.integers(0, attempts.size, size=(bootstrap, attempts.size))
    boot_C = weights[idx_w].mean(axis=1)
    boot_c = attempts[idx_a].mean(axis=1)
    return CramerConstants(
        c_theta=float(attempts.mean()),
        C=float(weights.mean()),
        c_theta_se=float(boot_c.std(ddof=1)),
        C_se=float(boot_C.std(ddof=1)),
        product_se=float((boot_C * boot_c).std(ddof=1)),
    )
