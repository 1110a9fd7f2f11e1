"""Weighted empirical distributions."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..utils.exceptions import DegenerateSampleError, StatisticsError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Weighted sample of a real random variable.

    Attributes:
        values: Finite sample values
        weights: Nonnegative weights with a positive sum (all 1 by default)
        metadata: Free-form provenance (sampler, model, seed, ...)
    """
    values: np.ndarray
    weights: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if values.size == 0:
            raise DegenerateSampleError("empty sample")
        if weights.shape != values.shape:
            raise StatisticsError("values and weights must have the same length")
        if not np.all(np.isfinite(values)):
            raise StatisticsError("sample values must be finite")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)) or not weights.sum() > 0:
            raise StatisticsError("weights must be finite, nonnegative, with a positive sum")
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def from_samples(cls, values: Any, weights: Optional[Any] = None,
                     **metadata: Any) -> "EmpiricalDistribution":
        values = np.asarray(values, dtype=float)
        if weights is None:
            weights = np.ones_like(values)
        return cls(values, np.asarray(weights, dtype=float), dict(metadata))

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def ess(self) -> float:
        """Kish effective sample size (Σw)²/Σw²."""
        w = self.weights
        return float(w.sum() ** 2 / np.sum(w * w))

    @property
    def is_degenerate(self) -> bool:
        """True when all values with positive weight coincide."""
        support = self.values[self.weights > 0]
        return bool(np.all(support == support[0]))

    def sorted(self) -> Tuple[np.ndarray, np.ndarray]:
        """Sorted values and the normalized cumulative weights."""
        order = np.argsort(self.values, kind='stable')
        cum = np.cumsum(self.weights[order])
        return self.values[order], cum / cum[-1]

    def ecdf(self, x: ArrayLike) -> ArrayLike:
        """F(x) = P(X ≤ x)."""
        xs, cum = self.sorted()
        out = np.concatenate([[0.0], cum])[np.searchsorted(xs, x, side='right')]
        return float(out) if np.ndim(out) == 0 else out

    def ecdf_left(self, x: ArrayLike) -> ArrayLike:
        """F(x−) = P(X < x)."""
        xs, cum = self.sorted()
        out = np.concatenate([[0.0], cum])[np.searchsorted(xs, x, side='left')]
        return float(out) if np.ndim(out) == 0 else out

    def survival(self, x: ArrayLike) -> ArrayLike:
        """P(X > x)."""
        out = 1.0 - np.asarray(self.ecdf(x))
        return float(out) if out.ndim == 0 else out

    def mean(self) -> float:
        return float(np.average(self.values, weights=self.weights))

    def quantile(self, q: float) -> float:
        xs, cum = self.sorted()
        return float(xs[min(int(np.searchsorted(cum, q, side='left')), xs.size - 1)])

    def restrict(self, mask: Any) -> "EmpiricalDistribution":
        """Sub-sample selected by a boolean mask."""
        mask = np.asarray(mask, dtype=bool)
        return EmpiricalDistribution(self.values[mask], self.weights[mask], dict(self.metadata))

    def map(self, fn: Any) -> "EmpiricalDistribution":
        """Push the sample through a vectorized function."""
        return EmpiricalDistribution(fn(self.values), self.weights, dict(self.metadata))
