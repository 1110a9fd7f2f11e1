"""Pass/fail checks that turn statistics into report rows."""

import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..utils.exceptions import StatisticsError


@dataclass(frozen=True)
class TestRow:
    """One verdict; most checks pass when ``statistic <= threshold``."""
    __test__ = False  # not a pytest class

    test_id: str
    statistic: float
    threshold: float
    ess: float
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        row = asdict(self)
        row['pass'] = row.pop('passed')
        return row


def at_most(test_id: str, statistic: float, threshold: float, ess: float = math.nan) -> TestRow:
    statistic = float(statistic)
    return TestRow(test_id, statistic, float(threshold), float(ess),
                   bool(math.isfinite(statistic) and statistic <= threshold))


def at_least(test_id: str, statistic: float, threshold: float, ess: float = math.nan) -> TestRow:
    """Passes when ``statistic >= threshold``, e.g. an effective sample size floor."""
    statistic = float(statistic)
    return TestRow(test_id, statistic, float(threshold), float(ess),
                   bool(math.isfinite(statistic) and statistic >= threshold))


def close_to(test_id: str, value: float, target: float, tolerance: float,
             ess: float = math.nan) -> TestRow:
    """|value − target| ≤ tolerance."""
    return at_most(test_id, abs(float(value) - float(target)), tolerance, ess)


def within_se(test_id: str, value: float, target: float, se: float, k: float,
              ess: float = math.nan) -> TestRow:
    """|value − target| ≤ k standard errors; the statistic is the z-score."""
    if se <= 0:
        return close_to(test_id, value, target, 1e-12, ess)
    return at_most(test_id, abs(float(value) - float(target)) / se, k, ess)


def non_increasing(test_id: str, values: Sequence[float], slack: float = 0.0,
                   ess: float = math.nan) -> TestRow:
    """Largest increase between consecutive values, allowed up to ``slack``."""
    arr = np.asarray(values, dtype=float)
    worst = float(np.max(np.diff(arr))) if arr.size > 1 else 0.0
    return at_most(test_id, max(worst, 0.0), slack, ess)


def binomial_z(successes: int, n: int, p: float) -> float:
    """z-score of an observed frequency against probability ``p``."""
    if n <= 0 or not 0 < p < 1:
        raise StatisticsError(f"binomial z needs n > 0 and 0 < p < 1, got n={n}, p={p}")
    return (successes / n - p) / math.sqrt(p * (1.0 - p) / n)


def mean_se(values: Sequence[float], weights: Optional[Sequence[float]] = None) -> Tuple[float, float]:
    """Mean and its standard error; self-normalized (ratio) estimate when weighted."""
    x = np.asarray(values, dtype=float)
    if x.size < 2:
        raise StatisticsError("a standard error needs at least two values")
    if weights is None:
        return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))
    w = np.asarray(weights, dtype=float)
    w = w / w.sum()
    mean = float(np.sum(w * x))
    return mean, float(math.sqrt(np.sum(w * w * (x - mean) ** 2)))


def bootstrap_se(values: Sequence[float], statistic: Callable[[np.ndarray], float],
                 rng: np.random.Generator, resamples: int = 200) -> float:
    """Bootstrap standard error of ``statistic``."""
    x = np.asarray(values, dtype=float)
    if resamples < 2:
        raise StatisticsError("bootstrap needs at least two resamples")
    boot = [statistic(x[rng.integers(0, x.size, x.size)]) for _ in range(resamples)]
    return float(np.std(boot, ddof=1))
