"""Lamperti clocks: exponential functionals of a path and their inverses."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..paths.grid import PathLike, as_grid
from ..utils.exceptions import LampertiError, ValidationError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class LampertiClock:
    """Additive functional A(t) = ∫_{start}^{t} exp(sign·ξ_s) ds on the path grid.

    Attributes:
        times: Grid times of the path
        cumulative: A at each grid time, starting at 0
        sign: +1 or −1
    """
    times: np.ndarray
    cumulative: np.ndarray
    sign: int = 1

    @property
    def total(self) -> float:
        """The exponential integral over the whole life-interval."""
        return float(self.cumulative[-1])

    def clock(self, t: ArrayLike) -> ArrayLike:
        """A(t), linear between grid times."""
        out = np.interp(t, self.times, self.cumulative)
        return float(out) if np.ndim(out) == 0 else out

    def inverse(self, u: ArrayLike) -> ArrayLike:
        """Time change γ(u) = inf{t: A(t) > u}, linear between grid times."""
        out = np.interp(u, self.cumulative, self.times)
        return float(out) if np.ndim(out) == 0 else out


def lamperti_clock(path: PathLike, sign: int = 1) -> LampertiClock:
    """Build the clock of ``path`` by left-endpoint Riemann sums.

    Args:
        path: One-sided or two-sided path
        sign: +1 for ∫exp(ξ), −1 for ∫exp(−ξ)

    Raises:
        LampertiError: If the integrand overflows or the clock carries no mass
    """
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    grid = as_grid(path)
    if grid.n_points < 2:
        raise LampertiError("a clock needs at least one grid interval")
    try:
        with np.errstate(over='raise'):
            integrand = np.exp(sign * grid.values[:-1])
    except FloatingPointError as e:
        raise LampertiError(f"non-finite Lamperti integrand: {e}") from e
    cumulative = np.concatenate([[0.0], np.cumsum(integrand * np.diff(grid.times))])
    if not (np.isfinite(cumulative[-1]) and cumulative[-1] > 0):
        raise LampertiError(f"degenerate clock with total {cumulative[-1]:g}")
    return LampertiClock(grid.times, cumulative, sign)
