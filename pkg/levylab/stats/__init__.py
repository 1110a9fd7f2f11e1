"""Empirical laws, distances, tail fits, ruin formulas and verdict checks."""

from .checks import (
    TestRow,
    at_least,
    at_most,
    binomial_z,
    bootstrap_se,
    close_to,
    mean_se,
    non_increasing,
    within_se,
)
from .distances import (
    DistanceResult,
    calibrated_null_threshold,
    exponential_cdf,
    ks_critical_value,
    ks_distance,
    point_mass_cdf,
    tabulated_cdf,
    wasserstein1,
)
from .empirical import EmpiricalDistribution
from .ruin import (
    debt_time_cdf,
    debt_time_cdf_table,
    debt_time_density,
    debt_time_density_mc,
    debt_time_laplace,
    debt_time_laplace_numeric,
    debt_time_normalization,
)
from .tails import TailFit, tail_exponent_fit

__all__ = [
    "DistanceResult",
    "EmpiricalDistribution",
    "TailFit",
    "TestRow",
    "at_least",
    "at_most",
    "binomial_z",
    "bootstrap_se",
    "calibrated_null_threshold",
    "close_to",
    "debt_time_cdf",
    "debt_time_cdf_table",
    "debt_time_density",
    "debt_time_density_mc",
    "debt_time_laplace",
    "debt_time_laplace_numeric",
    "debt_time_normalization",
    "exponential_cdf",
    "ks_critical_value",
    "ks_distance",
    "mean_se",
    "non_increasing",
    "point_mass_cdf",
    "tabulated_cdf",
    "tail_exponent_fit",
    "wasserstein1",
]
