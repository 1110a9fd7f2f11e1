"""Parametric Lévy model family: drift, Brownian part and one-sided
exponential compound-Poisson jumps."""

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import numpy as np

from ..utils.exceptions import ValidationError
from ..utils.validators import Validators
from .exceptions import DomainError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class JumpSpec:
    """Compound-Poisson component with exponential jump sizes.

    Attributes:
        rate: Jump intensity (events per unit time); 0 means no jumps
        beta: Rate of the exponential magnitude law
        sign: +1 for upward jumps, -1 for downward jumps
    """
    rate: float
    beta: float
    sign: int = 1

    def __post_init__(self) -> None:
        if not math.isfinite(self.rate) or self.rate < 0:
            raise ValidationError(f"jump rate must be >= 0, got {self.rate}")
        if not math.isfinite(self.beta) or self.beta <= 0:
            raise ValidationError(f"jump beta must be > 0, got {self.beta}")
        if self.sign not in (1, -1):
            raise ValidationError(f"jump sign must be +1 or -1, got {self.sign}")

    @property
    def mean_size(self) -> float:
        """Signed mean jump size."""
        return self.sign / self.beta

    def to_dict(self) -> Dict[str, Any]:
        return {'rate': self.rate, 'beta': self.beta, 'sign': self.sign}


@dataclass(frozen=True)
class LevyModel:
    """Lévy process ξ with cumulant
    ψ(s) = drift·s + sigma²s²/2 + Σ rate·(beta/(beta − sign·s) − 1).

    ``theta`` and ``tilted_mean`` are derived by
    :func:`levylab.models.validate_model` and are never read from input.
    """
    drift: float
    sigma: float
    jumps: Tuple[JumpSpec, ...] = field(default_factory=tuple)
    theta: Optional[float] = None
    tilted_mean: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, 'jumps', tuple(self.jumps))
        object.__setattr__(self, 'drift', float(self.drift))
        object.__setattr__(self, 'sigma', float(self.sigma))

    @classmethod
    def brownian(cls, drift: float, sigma: float = 1.0) -> "LevyModel":
        """Brownian motion with drift."""
        return cls(drift=drift, sigma=sigma)

    @classmethod
    def from_reserve(cls, premium: float, sigma: float, claim_rate: float,
                     claim_mean: float) -> "LevyModel":
        """Model of ξ = −R for a diffusion-perturbed Cramér–Lundberg reserve.

        R_t = premium·t + sigma·B_t − (compound Poisson claims with
        exponential sizes of mean ``claim_mean``), so ξ only jumps upward.
        """
        jumps = (JumpSpec(claim_rate, 1.0 / claim_mean, 1),) if claim_rate > 0 else ()
        return cls(drift=-premium, sigma=sigma, jumps=jumps)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "LevyModel":
        """Build an unvalidated model from its JSON description.

        Raises:
            ValidationError: If the description is malformed
        """
        Validators.validate_model_description(data)
        jumps = tuple(JumpSpec(float(j['rate']), float(j['beta']), int(j['sign']))
                      for j in data.get('jumps', []))
        return cls(drift=float(data['drift']), sigma=float(data['sigma']), jumps=jumps)

    @classmethod
    def from_json(cls, source: Union[str, Path]) -> "LevyModel":
        """Build a model from a JSON file path or a JSON string."""
        path = Path(source) if not str(source).lstrip().startswith('{') else None
        try:
            if path is not None:
                with open(path, 'r', encoding='utf-8') as f:
                    data = json.load(f)
            else:
                data = json.loads(str(source))
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"model: cannot read JSON description: {e}")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        """JSON description (input fields only)."""
        return {
            'drift': self.drift,
            'sigma': self.sigma,
            'jumps': [j.to_dict() for j in self.jumps],
        }

    def with_derived(self, theta: float, tilted_mean: float) -> "LevyModel":
        return replace(self, theta=theta, tilted_mean=tilted_mean)

    def negated(self) -> "LevyModel":
        """Unvalidated model of −ξ."""
        return LevyModel(
            drift=-self.drift,
            sigma=self.sigma,
            jumps=tuple(JumpSpec(j.rate, j.beta, -j.sign) for j in self.jumps),
        )

    @property
    def is_validated(self) -> bool:
        return self.theta is not None

    @property
    def active_jumps(self) -> Tuple[JumpSpec, ...]:
        return tuple(j for j in self.jumps if j.rate > 0)

    @property
    def jump_rate(self) -> float:
        """Total jump intensity."""
        return float(sum(j.rate for j in self.active_jumps))

    @property
    def has_positive_jumps(self) -> bool:
        return any(j.sign > 0 for j in self.active_jumps)

    @property
    def has_negative_jumps(self) -> bool:
        return any(j.sign < 0 for j in self.active_jumps)

    @property
    def domain(self) -> Tuple[float, float]:
        """Open interval on which the cumulant is finite."""
        upper = min((j.beta for j in self.active_jumps if j.sign > 0), default=math.inf)
        lower = -min((j.beta for j in self.active_jumps if j.sign < 0), default=math.inf)
        return lower, upper

    @property
    def mean(self) -> float:
        """E(ξ₁) = ψ′(0)."""
        return self.drift + sum(j.rate * j.mean_size for j in self.active_jumps)

    def _check_domain(self, s: np.ndarray) -> None:
        lower, upper = self.domain
        if np.any(s >= upper) or np.any(s <= lower):
            raise DomainError(
                f"cumulant undefined at s={s if s.ndim else float(s)}: "
                f"domain is ({lower:g}, {upper:g})")

    def cumulant(self, s: ArrayLike) -> ArrayLike:
        """ψ(s) = log E exp(sξ₁).

        Raises:
            DomainError: If s reaches a pole of a jump component
        """
        arr = np.asarray(s, dtype=float)
        self._check_domain(arr)
        value = self.drift * arr + 0.5 * self.sigma ** 2 * arr ** 2
        for j in self.active_jumps:
            value = value + j.rate * (j.beta / (j.beta - j.sign * arr) - 1.0)
        if np.ndim(value) == 0:
            return 0.0 if arr == 0 else float(value)
        return value

    def cumulant_derivative(self, s: ArrayLike) -> ArrayLike:
        """ψ′(s), analytic."""
        arr = np.asarray(s, dtype=float)
        self._check_domain(arr)
        value = self.drift + self.sigma ** 2 * arr
        for j in self.active_jumps:
            value = value + j.rate * j.beta * j.sign / (j.beta - j.sign * arr) ** 2
        return float(value) if np.ndim(value) == 0 else value

    def cumulant_second_derivative(self, s: ArrayLike) -> ArrayLike:
        """ψ″(s), analytic and strictly positive."""
        arr = np.asarray(s, dtype=float)
        self._check_domain(arr)
        value = self.sigma ** 2 + 0.0 * arr
        for j in self.active_jumps:
            value = value + 2.0 * j.rate * j.beta / (j.beta - j.sign * arr) ** 3
        return float(value) if np.ndim(value) == 0 else value

    def jump_probabilities(self) -> np.ndarray:
        """Probability that a jump belongs to each active component."""
        rates = np.array([j.rate for j in self.active_jumps], dtype=float)
        return rates / rates.sum() if rates.size else rates

    def label(self) -> str:
        """Short human-readable description."""
        parts = [f"drift={self.drift:g}", f"sigma={self.sigma:g}"]
        parts += [f"jump(rate={j.rate:g}, beta={j.beta:g}, sign={j.sign:+d})"
                  for j in self.jumps]
        return "LevyModel(" + ", ".join(parts) + ")"


def cumulant(model: LevyModel, s: ArrayLike) -> ArrayLike:
    """ψ(s) for ``model``; see :meth:`LevyModel.cumulant`."""
    return model.cumulant(s)

