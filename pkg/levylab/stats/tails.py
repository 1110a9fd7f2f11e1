"""Power-law tail exponent of a positive sample."""

from typing import NamedTuple, Optional

import numpy as np

from ..utils.exceptions import InsufficientExceedancesError, StatisticsError

MIN_EXCEEDANCES = 1000
_MIN_TAIL_COUNT = 100


class TailFit(NamedTuple):
    """Fitted slope of log P(X > z) against log z.

    Attributes:
        slope: Least-squares slope (−α for a Pareto(α) tail)
        se: Bootstrap standard error of the slope
        n_exceedances: Sample points strictly above ``z_min``
        z_max: Upper end of the fitted grid
    """
    slope: float
    se: float
    n_exceedances: int
    z_max: float


def _slope(sorted_values: np.ndarray, z: np.ndarray) -> float:
    n = sorted_values.size
    survival = (n - np.searchsorted(sorted_values, z, side='right')) / n
    keep = survival > 0
    return float(np.polyfit(np.log(z[keep]), np.log(survival[keep]), 1)[0])


def tail_exponent_fit(sample: np.ndarray, z_min: float, z_max: Optional[float] = None,
                      n_grid: int = 25, bootstrap: int = 200,
                      rng: Optional[np.random.Generator] = None,
                      min_exceedances: int = MIN_EXCEEDANCES) -> TailFit:
    """Fit the tail exponent on a geometric grid of levels in [z_min, z_max].

    Args:
        sample: Positive sample
        z_min: Lower end of the fit
        z_max: Upper end; by default the level still exceeded by 100 points
        n_grid: Number of grid levels
        bootstrap: Bootstrap resamples for the standard error
        rng: Generator for the bootstrap (a fixed seed by default)
        min_exceedances: Required points strictly above ``z_min``

    Raises:
        InsufficientExceedancesError: If too few points exceed ``z_min``
    """
    values = np.sort(np.asarray(sample, dtype=float).ravel())
    if not z_min > 0:
        raise StatisticsError(f"z_min must be positive, got {z_min}")
    n_exc = int(np.sum(values > z_min))
    if n_exc < min_exceedances:
        raise InsufficientExceedancesError(
            f"insufficient exceedances: {n_exc} values above z_min={z_min:g}, "
            f"need {min_exceedances}")
    if z_max is None:
        z_max = float(values[-min(_MIN_TAIL_COUNT, n_exc)])
    if not z_max > z_min:
        raise InsufficientExceedancesError(
            f"insufficient exceedances: no room above z_min={z_min:g}")

    z = np.geomspace(z_min, z_max, n_grid)
    slope = _slope(values, z)
    rng = rng if rng is not None else np.random.default_rng(0)
    boot = np.empty(bootstrap)
    for b in range(bootstrap):
        boot[b] = _slope(np.sort(rng.choice(values, size=values.size, replace=True)), z)
    se = float(boot.std(ddof=1)) if bootstrap > 1 else 0.0
    return TailFit(slope, se, n_exc, float(z_max))
