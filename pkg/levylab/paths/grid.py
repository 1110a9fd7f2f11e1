"""Discretized càdlàg paths with jump marks and Brownian-bridge annotations.

A path is stored on a grid of times. At every grid time ``k`` we keep the
value ``values[k]`` and the left limit ``left_values[k]``; they differ only at
jump epochs. Between two grid times the path moves continuously from
``values[k]`` to ``left_values[k + 1]``, and ``bridge_max[k]`` /
``bridge_min[k]`` hold the extremes of that continuous piece.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils.exceptions import DeadValueError, PathError, PivotError

_TIME_TOL = 1e-12

SPLIT_MODES = ('interior', 'peak', 'trough', 'crossing_up', 'crossing_down')


class _Dead:
    """Value of a path outside its life-interval (the isolated point −∞).

    Any arithmetic or ordering with it raises :class:`DeadValueError`.
    """

    _instance: Optional["_Dead"] = None

    def __new__(cls) -> "_Dead":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DEAD"

    def __reduce__(self) -> str:
        return "DEAD"

    def _fail(self, *args: Any) -> Any:
        raise DeadValueError("arithmetic with the dead value")

    __add__ = __radd__ = __sub__ = __rsub__ = _fail
    __mul__ = __rmul__ = __truediv__ = __rtruediv__ = _fail
    __pow__ = __rpow__ = __neg__ = __pos__ = __abs__ = _fail
    __lt__ = __le__ = __gt__ = __ge__ = _fail
    __float__ = __int__ = _fail


DEAD = _Dead()


def is_dead(value: Any) -> bool:
    return value is DEAD


def _frozen(array: Any) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class PathGrid:
    """Càdlàg path on a strictly increasing time grid.

    Attributes:
        times: Grid times, including every jump epoch
        values: Path values at the grid times
        left_values: Left limits at the grid times
        bridge_max: Maximum of the continuous piece on each interval
        bridge_min: Minimum of the continuous piece on each interval
    """
    times: np.ndarray
    values: np.ndarray
    left_values: np.ndarray
    bridge_max: np.ndarray
    bridge_min: np.ndarray

    def __post_init__(self) -> None:
        for name in ('times', 'values', 'left_values', 'bridge_max', 'bridge_min'):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

        n = self.times.size
        if n == 0:
            raise PathError("a path needs at least one grid point")
        if self.values.size != n or self.left_values.size != n:
            raise PathError("times, values and left_values must have the same length")
        if self.bridge_max.size != n - 1 or self.bridge_min.size != n - 1:
            raise PathError("bridge annotations need one entry per interval")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise PathError("grid times must be strictly increasing")
        if not (np.all(np.isfinite(self.values)) and np.all(np.isfinite(self.left_values))):
            raise PathError("path values must be finite")
        if n > 1:
            upper = np.maximum(self.values[:-1], self.left_values[1:])
            lower = np.minimum(self.values[:-1], self.left_values[1:])
            tol = 1e-9 * (1.0 + np.abs(upper))
            if np.any(self.bridge_max < upper - tol) or np.any(self.bridge_min > lower + tol):
                raise PathError("bridge extremes must enclose the interval endpoints")

    @classmethod
    def piecewise_linear(cls, knot_times: Sequence[float], knot_values: Sequence[float],
                         step: Optional[float] = None) -> "PathGrid":
        """Continuous piecewise-linear path through the knots.

        Args:
            knot_times: Increasing knot times
            knot_values: Values at the knots
            step: Optional spacing of extra grid points between knots
        """
        knot_times = np.asarray(knot_times, dtype=float)
        knot_values = np.asarray(knot_values, dtype=float)
        times = knot_times
        if step is not None:
            n = int(np.ceil((knot_times[-1] - knot_times[0]) / step - 1e-9))
            regular = knot_times[0] + step * np.arange(n + 1)
            times = np.union1d(np.round(regular, 12), knot_times)
            times = times[times <= knot_times[-1]]
        values = np.interp(times, knot_times, knot_values)
        return cls(times, values, values.copy(),
                   np.maximum(values[:-1], values[1:]), np.minimum(values[:-1], values[1:]))

    @property
    def start(self) -> float:
        return float(self.times[0])

    @property
    def end(self) -> float:
        return float(self.times[-1])

    @property
    def n_points(self) -> int:
        return int(self.times.size)

    @property
    def is_jump(self) -> np.ndarray:
        return self.values != self.left_values

    @property
    def jump_times(self) -> np.ndarray:
        return self.times[self.is_jump]

    @property
    def grid_max(self) -> float:
        return float(max(self.values.max(), self.left_values.max()))

    def contains(self, t: float) -> bool:
        return self.start - _TIME_TOL <= t <= self.end + _TIME_TOL

    def index_of(self, t: float) -> Optional[int]:
        """Index of grid time ``t`` (within tolerance) or None."""
        k = int(np.searchsorted(self.times, t))
        for j in (k - 1, k):
            if 0 <= j < self.n_points and abs(self.times[j] - t) <= _TIME_TOL * (1 + abs(t)):
                return j
        return None

    def _interpolate(self, t: float, at_point: np.ndarray) -> Union[float, Any]:
        if not self.contains(t):
            return DEAD
        k = self.index_of(t)
        if k is not None:
            return float(at_point[k])
        i = int(np.searchsorted(self.times, t, side='right')) - 1
        t0, t1 = self.times[i], self.times[i + 1]
        a, b = self.values[i], self.left_values[i + 1]
        return float(a + (b - a) * (t - t0) / (t1 - t0))

    def value_at(self, t: float) -> Union[float, Any]:
        """ξ_t, linear between grid times; DEAD outside the life-interval."""
        return self._interpolate(t, self.values)

    def left_value_at(self, t: float) -> Union[float, Any]:
        """ξ_{t−}; equals ``value_at`` away from jump epochs."""
        return self._interpolate(t, self.left_values)

    def split_at(self, t: float, value: Optional[float] = None,
                 mode: str = 'interior') -> "PathGrid":
        """Insert a continuous grid point at time ``t``.

        Args:
            t: Time inside the life-interval
            value: Value of the new point; linear interpolation if omitted
            mode: How the bridge annotations of the two halves are set:
                ``interior`` keeps the enclosing interval's extremes on both
                halves, ``peak``/``trough`` mark ``value`` as the extreme of
                the interval, ``crossing_up``/``crossing_down`` cap the first
                half at ``value``.

        Raises:
            PivotError: If t lies outside the life-interval
        """
        if mode not in SPLIT_MODES:
            raise PathError(f"unknown split mode: {mode}")
        if not self.contains(t):
            raise PivotError(f"time {t:g} outside life-interval [{self.start:g}, {self.end:g}]")
        if self.index_of(t) is not None:
            return self

        i = int(np.searchsorted(self.times, t, side='right')) - 1
        a, b = float(self.values[i]), float(self.left_values[i + 1])
        v = float(self.value_at(t)) if value is None else float(value)
        hi, lo = float(self.bridge_max[i]), float(self.bridge_min[i])

        if mode == 'peak':
            max1, max2, min1, min2 = max(a, v), max(v, b), lo, lo
        elif mode == 'trough':
            max1, max2, min1, min2 = hi, hi, min(a, v), min(v, b)
        elif mode == 'crossing_up':
            max1, max2, min1, min2 = max(a, v), hi, lo, lo
        elif mode == 'crossing_down':
            max1, max2, min1, min2 = hi, hi, min(a, v), lo
        else:
            max1, max2, min1, min2 = hi, hi, lo, lo

        max1, max2 = max(max1, a, v), max(max2, v, b)
        min1, min2 = min(min1, a, v), min(min2, v, b)

        return PathGrid(
            np.insert(self.times, i + 1, t),
            np.insert(self.values, i + 1, v),
            np.insert(self.left_values, i + 1, v),
            np.concatenate([self.bridge_max[:i], [max1, max2], self.bridge_max[i + 1:]]),
            np.concatenate([self.bridge_min[:i], [min1, min2], self.bridge_min[i + 1:]]),
        )

    def truncate(self, t_end: float) -> Optional["PathGrid"]:
        """Kill the path at ``t_end``; None if nothing of the life is left."""
        if t_end <= self.start:
            return None
        if t_end >= self.end:
            return self
        grid = self.split_at(t_end)
        k = grid.index_of(t_end)
        assert k is not None
        return grid.slice(0, k + 1)

    def segment_from(self, t_start: float, value: Optional[float] = None,
                     mode: str = 'interior') -> "PathGrid":
        """Part of the path on [t_start, end], starting continuously at t_start."""
        grid = self.split_at(t_start, value, mode)
        k = grid.index_of(t_start)
        assert k is not None
        seg = grid.slice(k, grid.n_points)
        left = seg.left_values.copy()
        left[0] = seg.values[0]
        return PathGrid(seg.times, seg.values, left, seg.bridge_max, seg.bridge_min)

    def slice(self, i: int, j: int) -> "PathGrid":
        """Grid points i..j−1 with the intervals between them."""
        return PathGrid(self.times[i:j], self.values[i:j], self.left_values[i:j],
                        self.bridge_max[i:max(i, j - 1)], self.bridge_min[i:max(i, j - 1)])

    def offset(self, dv: float) -> "PathGrid":
        return PathGrid(self.times, self.values + dv, self.left_values + dv,
                        self.bridge_max + dv, self.bridge_min + dv)

    def shift_time(self, dt: float) -> "PathGrid":
        return PathGrid(self.times + dt, self.values, self.left_values,
                        self.bridge_max, self.bridge_min)

    def negate(self) -> "PathGrid":
        return PathGrid(self.times, -self.values, -self.left_values,
                        -self.bridge_min, -self.bridge_max)

    def concat(self, other: "PathGrid") -> "PathGrid":
        """Glue ``other`` after this path; ``other`` must start at this path's end.

        At the junction the left limit comes from this path and the value
        from ``other``, so a jump there is preserved.
        """
        if abs(other.start - self.end) > _TIME_TOL * (1 + abs(self.end)):
            raise PathError(f"cannot glue a path starting at {other.start:g} "
                            f"to one ending at {self.end:g}")
        values = np.concatenate([self.values[:-1], other.values])
        left = np.concatenate([self.left_values[:-1], [self.left_values[-1]], other.left_values[1:]])
        return PathGrid(
            np.concatenate([self.times[:-1], other.times]),
            values,
            left,
            np.concatenate([self.bridge_max, other.bridge_max]),
            np.concatenate([self.bridge_min, other.bridge_min]),
        )

    def reversed_about(self, pivot: float) -> "PathGrid":
        """Grid of t ↦ ξ_{(pivot − t)−}; ``pivot`` must be a grid time."""
        if self.index_of(pivot) is None:
            raise PivotError(f"pivot {pivot:g} is not a grid time")
        return PathGrid(
            pivot - self.times[::-1],
            self.left_values[::-1],
            self.values[::-1],
            self.bridge_max[::-1],
            self.bridge_min[::-1],
        )


@dataclass(frozen=True, eq=False)
class SampledPath(PathGrid):
    """One-sided path whose grid starts at time 0.

    Attributes:
        step: Regular grid spacing used by the simulator (0 if hand-built)
        stop_reason: Why the simulation ended (``horizon``, ``fall_below_max``,
            ``rise_above_min``, ``passage`` or ``truncated``)
    """
    step: float = 0.0
    stop_reason: str = "horizon"

    def __post_init__(self) -> None:
        super().__post_init__()
        if abs(self.times[0]) > _TIME_TOL:
            raise PathError(f"a sampled path starts at time 0, got {self.times[0]:g}")

    @classmethod
    def from_grid(cls, grid: PathGrid, step: float = 0.0,
                  stop_reason: str = "truncated") -> "SampledPath":
        times = grid.times - grid.times[0]
        left = grid.left_values.copy()
        left[0] = grid.values[0]
        return cls(times, grid.values, left, grid.bridge_max, grid.bridge_min,
                   step=step, stop_reason=stop_reason)

    @property
    def start_value(self) -> float:
        return float(self.values[0])

    @property
    def life_end(self) -> float:
        return self.end

    def truncate(self, t_end: float) -> Optional["SampledPath"]:  # type: ignore[override]
        grid = super().truncate(t_end)
        if grid is None:
            return None
        if grid is self:
            return self
        return SampledPath.from_grid(grid, self.step, "truncated")

    def offset(self, dv: float) -> "SampledPath":  # type: ignore[override]
        return SampledPath.from_grid(super().offset(dv), self.step, self.stop_reason)

    def concat(self, other: PathGrid) -> "SampledPath":  # type: ignore[override]
        return SampledPath.from_grid(super().concat(other), self.step, getattr(other, 'stop_reason', 'truncated'))


@dataclass(frozen=True, eq=False)
class TwoSidedPath:
    """Path on a life-interval around 0, stored as two one-sided paths.

    ``backward`` holds t ↦ −ξ_{(−t)−} and ``forward`` holds t ↦ ξ_t, both
    for t ≥ 0. Either part may be missing: no backward part means the
    life-interval starts at 0, no forward part means the path is killed at 0.
    """
    backward: Optional[SampledPath]
    forward: Optional[SampledPath]

    def __post_init__(self) -> None:
        if self.backward is None and self.forward is None:
            raise PathError("a two-sided path needs at least one part")

    @property
    def life_interval(self) -> Tuple[float, float]:
        lo = -self.backward.end if self.backward is not None else 0.0
        hi = self.forward.end if self.forward is not None else 0.0
        return lo, hi

    @property
    def value_at_zero(self) -> Union[float, Any]:
        """ξ_0, DEAD when killed at 0."""
        return self.forward.start_value if self.forward is not None else DEAD

    @property
    def left_value_at_zero(self) -> Union[float, Any]:
        """ξ_{0−}, DEAD when the life-interval starts at 0."""
        return -self.backward.start_value if self.backward is not None else DEAD

    @cached_property
    def grid(self) -> PathGrid:
        """Back-to-back grid on the whole life-interval (negative times first)."""
        if self.backward is None:
            assert self.forward is not None
            return self.forward
        b = self.backward
        negative = PathGrid(
            -b.times[::-1],
            -b.left_values[::-1],
            -b.values[::-1],
            -b.bridge_min[::-1],
            -b.bridge_max[::-1],
        )
        if self.forward is None:
            # killed at 0: the last point only carries ξ_{0−}
            return negative
        f = self.forward
        left = f.left_values.copy()
        left[0] = -b.values[0]
        return PathGrid(
            np.concatenate([negative.times[:-1], f.times]),
            np.concatenate([negative.values[:-1], f.values]),
            np.concatenate([negative.left_values[:-1], left]),
            np.concatenate([negative.bridge_max, f.bridge_max]),
            np.concatenate([negative.bridge_min, f.bridge_min]),
        )

    def flatten(self) -> PathGrid:
        return self.grid

    def value_at(self, t: float) -> Union[float, Any]:
        if self.forward is None and t >= 0:
            return DEAD
        return self.grid.value_at(t)

    def offset(self, dv: float) -> "TwoSidedPath":
        """Add ``dv`` to every value of ξ."""
        return TwoSidedPath(
            self.backward.offset(-dv) if self.backward is not None else None,
            self.forward.offset(dv) if self.forward is not None else None,
        )


PathLike = Union[PathGrid, TwoSidedPath]


def as_grid(path: PathLike) -> PathGrid:
    """Back-to-back grid of any path representation."""
    return path.grid if isinstance(path, TwoSidedPath) else path


def split_two_sided(grid: PathGrid, at: float = 0.0, value: Optional[float] = None,
                    mode: str = 'interior') -> TwoSidedPath:
    """Re-origin ``grid`` at time ``at`` and cut it into backward/forward parts.

    Raises:
        PivotError: If ``at`` lies outside the life-interval
    """
    grid = grid.split_at(at, value, mode)
    k = grid.index_of(at)
    assert k is not None
    rel = grid.times - grid.times[k]

    backward = None
    if k > 0:
        bmax = -grid.bridge_min[:k][::-1]
        bmin = -grid.bridge_max[:k][::-1]
        b_values = -grid.left_values[:k + 1][::-1]
        b_left = -grid.values[:k + 1][::-1]
        b_left[0] = b_values[0]
        backward = SampledPath(-rel[:k + 1][::-1], b_values, b_left, bmax, bmin,
                               stop_reason="truncated")

    f_left = grid.left_values[k:].copy()
    f_left[0] = grid.values[k]
    forward = SampledPath(rel[k:], grid.values[k:], f_left,
                          grid.bridge_max[k:], grid.bridge_min[k:],
                          stop_reason=getattr(grid, 'stop_reason', 'truncated'))
    return TwoSidedPath(backward, forward)
