"""Limit law of the total time in debt of a perturbed risk process.

For a model without negative jumps, the time D spent above 0 by ξ = −R under
P_x(· | sup ξ > 0) converges as x → −∞ to the law with density
θ·Ẽ(ξ_t⁻)/t on (0, ∞). Its Laplace transform is θ/Φ(a), Φ being the
first-passage exponent of the dual model.
"""

import math
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy import integrate
from scipy.special import ndtr

from ..models.cramer import dual_model, esscher_tilt, phi_exponent, validate_model
from ..models.exceptions import SpectralConditionError
from ..models.levy_model import LevyModel
from ..paths.engine import sample_increments
from ..utils.exceptions import ValidationError

ArrayLike = Union[float, np.ndarray]

GRID_START = 1e-4
GRID_END = 50.0
GRID_POINTS = 2000
MC_SAMPLES = 1_000_000
_SQRT_2PI = math.sqrt(2.0 * math.pi)


class DensityEstimate(NamedTuple):
    value: float
    se: float


def _check_spectrally_positive(model: LevyModel) -> LevyModel:
    model = validate_model(model)
    if model.has_negative_jumps:
        raise SpectralConditionError(
            "debt-time law needs a model without negative jumps")
    return model


def _gaussian_negative_part(mean: np.ndarray, sd: np.ndarray) -> np.ndarray:
    """E(N⁻) for N ~ Normal(mean, sd²)."""
    z = mean / sd
    return sd * np.exp(-0.5 * z * z) / _SQRT_2PI - mean * ndtr(-z)


def debt_time_density_mc(model: LevyModel, t: float, n_samples: int = MC_SAMPLES,
                         rng: Optional[np.random.Generator] = None) -> DensityEstimate:
    """Monte Carlo value of θ·Ẽ(ξ_t⁻)/t with its standard error."""
    model = _check_spectrally_positive(model)
    assert model.theta is not None
    rng = rng if rng is not None else np.random.default_rng(0)
    draws = np.maximum(-sample_increments(esscher_tilt(model), rng, t, n_samples), 0.0)
    scale = model.theta / t
    return DensityEstimate(float(scale * draws.mean()),
                           float(scale * draws.std(ddof=1) / math.sqrt(n_samples)))


def debt_time_density(model: LevyModel, t: ArrayLike, n_samples: int = MC_SAMPLES,
                      rng: Optional[np.random.Generator] = None) -> ArrayLike:
    """Limit density of the debt time at ``t`` > 0.

    Closed form for Brownian models, Monte Carlo with ``n_samples`` tilted
    increments otherwise.

    Raises:
        SpectralConditionError: If the model has negative jumps
        ValidationError: If some t is not positive
    """
    model = _check_spectrally_positive(model)
    assert model.theta is not None
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise ValidationError("debt-time density is defined for t > 0")
    if model.active_jumps:
        out = np.array([debt_time_density_mc(model, float(ti), n_samples, rng).value
                        for ti in np.atleast_1d(t_arr)])
        out = out.reshape(t_arr.shape)
    else:
        tilted_mean = model.drift + model.sigma ** 2 * model.theta
        out = model.theta * _gaussian_negative_part(tilted_mean * t_arr,
                                                    model.sigma * np.sqrt(t_arr)) / t_arr
    return float(out) if out.ndim == 0 else out


def _head_mass(model: LevyModel, a: ArrayLike) -> ArrayLike:
    """∫_0^a of the small-t expansion θ(σ/√(2πt) − m̃/2)."""
    assert model.theta is not None and model.tilted_mean is not None
    a = np.clip(a, 0.0, None)
    return model.theta * (2.0 * model.sigma * np.sqrt(a) / _SQRT_2PI - 0.5 * model.tilted_mean * a)


def _grid(model: LevyModel, points: int, rng: Optional[np.random.Generator]):
    times = np.geomspace(GRID_START, GRID_END, points)
    n_samples = MC_SAMPLES if not model.active_jumps else 20_000
    return times, np.asarray(debt_time_density(model, times, n_samples, rng))


def debt_time_cdf_table(model: LevyModel, points: int = GRID_POINTS,
                        rng: Optional[np.random.Generator] = None):
    """Times and CDF values of the limit law on a geometric grid over (1e−4, 50).

    The mass on (0, 1e−4) comes from the small-t expansion
    θ(σ/√(2πt) − m̃/2), integrated in closed form. This is the t = u² substitution
    done analytically, and the t^{−1/2} singularity never reaches the quadrature.
    """
    model = _check_spectrally_positive(model)
    times, density = _grid(model, points, rng)
    cdf = _head_mass(model, GRID_START) + integrate.cumulative_trapezoid(density, times, initial=0.0)
    return times, cdf


def debt_time_cdf(model: LevyModel, t: ArrayLike, points: int = GRID_POINTS) -> ArrayLike:
    """CDF of the limit law."""
    model = _check_spectrally_positive(model)
    times, cdf = debt_time_cdf_table(model, points)
    t_arr = np.asarray(t, dtype=float)
    out = np.where(t_arr < GRID_START, _head_mass(model, t_arr),
                   np.interp(t_arr, times, cdf, right=float(cdf[-1])))
    return float(out) if out.ndim == 0 else out


def debt_time_normalization(model: LevyModel, points: int = GRID_POINTS) -> float:
    """Total mass of the limit density; 1 up to quadrature error."""
    return float(debt_time_cdf_table(model, points)[1][-1])


def debt_time_laplace(model: LevyModel, a: float) -> float:
    """Laplace transform θ/Φ(a) of the limit law, Φ from the dual model."""
    model = _check_spectrally_positive(model)
    assert model.theta is not None
    return model.theta / phi_exponent(dual_model(model), a)


def debt_time_laplace_numeric(model: LevyModel, a: float, points: int = GRID_POINTS) -> float:
    """∫ e^{−at} density(t) dt by quadrature on the same grid as the CDF."""
    model = _check_spectrally_positive(model)
    times, density = _grid(model, points, None)
    return float(_head_mass(model, GRID_START)
                 + integrate.trapezoid(np.exp(-a * times) * density, times))
