"""Distances between weighted empirical laws, and their null calibration."""

import math
from typing import Any, Callable, NamedTuple, Sequence, Union

import numpy as np
from scipy import stats as sps

from ..utils.exceptions import DegenerateSampleError, StatisticsError
from .empirical import EmpiricalDistribution

CDF = Callable[[np.ndarray], np.ndarray]
Sample = Union[EmpiricalDistribution, Sequence[float], np.ndarray]


class DistanceResult(NamedTuple):
    """A distance with the effective sample size behind it.

    Attributes:
        statistic: The distance
        ess: Effective sample size (harmonic combination for two samples)
        degenerate: True if an input sample is concentrated on one value
    """
    statistic: float
    ess: float
    degenerate: bool = False


def as_distribution(sample: Sample) -> EmpiricalDistribution:
    if isinstance(sample, EmpiricalDistribution):
        return sample
    return EmpiricalDistribution.from_samples(sample)


def _check_ess(dist: EmpiricalDistribution, min_ess: float) -> None:
    if dist.ess < min_ess:
        raise DegenerateSampleError(
            f"effective sample size {dist.ess:.1f} below the required {min_ess:g}")


def _pooled_ess(a: EmpiricalDistribution, b: EmpiricalDistribution) -> float:
    return a.ess * b.ess / (a.ess + b.ess)


def ks_distance(a: Sample, b: Union[Sample, CDF], min_ess: float = 0.0) -> DistanceResult:
    """Kolmogorov–Smirnov distance between weighted ECDFs, or between a
    weighted ECDF and an analytic CDF.

    Against an analytic CDF both the values and the left limits at every
    sample point are compared, so atoms of the reference law are handled.

    Args:
        a: Weighted sample
        b: Weighted sample, or a vectorized CDF
        min_ess: Minimum effective sample size of each sample

    Raises:
        DegenerateSampleError: If an effective sample size is below ``min_ess``
    """
    a = as_distribution(a)
    _check_ess(a, min_ess)
    if callable(b) and not isinstance(b, EmpiricalDistribution):
        xs, cum = a.sorted()
        last = np.r_[xs[1:] != xs[:-1], True]
        points, upper = xs[last], cum[last]
        lower = np.r_[0.0, upper[:-1]]
        ref = np.asarray(b(points), dtype=float)
        ref_left = np.asarray(b(np.nextafter(points, -np.inf)), dtype=float)
        stat = max(float(np.max(np.abs(upper - ref))), float(np.max(np.abs(lower - ref_left))))
        return DistanceResult(stat, a.ess, a.is_degenerate)

    b = as_distribution(b)
    _check_ess(b, min_ess)
    x1, c1 = a.sorted()
    x2, c2 = b.sorted()
    grid = np.concatenate([x1, x2])
    f1 = np.r_[0.0, c1][np.searchsorted(x1, grid, side='right')]
    f2 = np.r_[0.0, c2][np.searchsorted(x2, grid, side='right')]
    return DistanceResult(float(np.max(np.abs(f1 - f2))), _pooled_ess(a, b),
                          a.is_degenerate or b.is_degenerate)


def wasserstein1(a: Sample, b: Sample, min_ess: float = 0.0) -> DistanceResult:
    """W₁ distance: the area between the two weighted ECDFs."""
    a, b = as_distribution(a), as_distribution(b)
    _check_ess(a, min_ess)
    _check_ess(b, min_ess)
    stat = sps.wasserstein_distance(a.values, b.values, a.weights, b.weights)
    return DistanceResult(float(stat), _pooled_ess(a, b), a.is_degenerate or b.is_degenerate)


def ks_critical_value(ess: float, alpha: float = 0.01) -> float:
    """Upper ``alpha`` quantile of the one-sample KS statistic at sample size ``ess``."""
    if not 0 < alpha < 1:
        raise StatisticsError(f"alpha must lie in (0, 1), got {alpha}")
    n = max(1, int(math.floor(ess)))
    return float(sps.kstwo.ppf(1.0 - alpha, n))


def calibrated_null_threshold(null_statistics: Sequence[float], quantile: float = 0.99,
                              factor: float = 1.5) -> float:
    """Pass threshold from null replicates: ``factor`` × their ``quantile``."""
    values = np.asarray(null_statistics, dtype=float)
    if values.size == 0:
        raise StatisticsError("no null statistics to calibrate against")
    return float(factor * np.quantile(values, quantile))


def exponential_cdf(rate: float) -> CDF:
    """CDF of Exp(rate)."""
    return lambda x: sps.expon.cdf(x, scale=1.0 / rate)


def point_mass_cdf(at: float = 0.0) -> CDF:
    return lambda x: (np.asarray(x, dtype=float) >= at).astype(float)


def tabulated_cdf(points: Any, values: Any) -> CDF:
    """Monotone interpolation of a tabulated CDF, 0 on the left and 1 on the right."""
    points = np.asarray(points, dtype=float)
    values = np.asarray(values, dtype=float)
    return lambda x: np.interp(x, points, values, left=0.0, right=1.0)
