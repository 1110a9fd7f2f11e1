"""Path functionals: supremum and its location, entrance and last-passage
times, occupation time of the positive half-line."""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from .grid import PathGrid, PathLike, as_grid

INF = math.inf


@dataclass(frozen=True)
class PathStats:
    """Functionals of one path over its life-interval.

    Absent events are reported as ``math.inf`` (entrance times) or as the
    left end of the life-interval (last-passage times of empty sets).

    Attributes:
        sup: Supremum, bridge maxima included
        argmax: σ, first instant the supremum is reached
        inf: Infimum, bridge minima included
        argmin: First instant the infimum is reached
        tau: τ, first entrance time into (0, ∞)
        first_neg: T, first entrance time into (−∞, 0)
        occupation_pos: D, time spent in (0, ∞)
        last_pos: ℓ, last time in (0, ∞)
        passage: τ_y for each queried level y
        last_below: sup{t: ξ_t ≤ z} for each queried level z
        last_above: sup{t: ξ_t > z} for each queried level z
        life: Life-interval (start, end)
    """
    sup: float
    argmax: float
    inf: float
    argmin: float
    tau: float
    first_neg: float
    occupation_pos: float
    last_pos: float
    passage: Mapping[float, float] = field(default_factory=dict)
    last_below: Mapping[float, float] = field(default_factory=dict)
    last_above: Mapping[float, float] = field(default_factory=dict)
    life: Tuple[float, float] = (0.0, 0.0)


def _midpoints(grid: PathGrid) -> np.ndarray:
    return 0.5 * (grid.times[:-1] + grid.times[1:])


def supremum(grid: PathGrid) -> Tuple[float, float]:
    """(sup ξ, σ); grid points win ties against bridge maxima."""
    sup = grid.grid_max
    if grid.n_points > 1:
        sup = max(sup, float(grid.bridge_max.max()))
    hits = grid.times[(grid.values == sup) | (grid.left_values == sup)]
    candidates = [float(hits[0])] if hits.size else []
    if grid.n_points > 1:
        a, b = grid.values[:-1], grid.left_values[1:]
        inside = (grid.bridge_max == sup) & (grid.bridge_max > np.maximum(a, b))
        if np.any(inside):
            candidates.append(float(_midpoints(grid)[inside][0]))
    return sup, min(candidates)


def infimum(grid: PathGrid) -> Tuple[float, float]:
    """(inf ξ, first instant the infimum is reached)."""
    neg_sup, argmin = supremum(grid.negate())
    return -neg_sup, argmin


def first_passage_above(grid: PathGrid, level: float) -> float:
    """τ_y = inf{t: ξ_t > y}; linear crossing time inside an interval when the
    endpoint is already above y, otherwise the interval midpoint."""
    point_hits = np.flatnonzero(grid.values > level)
    best_key = 2 * int(point_hits[0]) if point_hits.size else None
    best_time = float(grid.times[point_hits[0]]) if point_hits.size else INF

    if grid.n_points > 1:
        interval_hits = np.flatnonzero(grid.bridge_max > level)
        if interval_hits.size:
            i = int(interval_hits[0])
            if best_key is None or 2 * i + 1 < best_key:
                a, b = grid.values[i], grid.left_values[i + 1]
                t0, t1 = grid.times[i], grid.times[i + 1]
                if a >= level:
                    # starts on the level: a diffusive piece crosses at once
                    best_time = float(t0)
                elif b > level:
                    best_time = float(t0 + (level - a) / (b - a) * (t1 - t0))
                else:
                    best_time = float(0.5 * (t0 + t1))
    return best_time


def first_passage_below(grid: PathGrid, level: float) -> float:
    """inf{t: ξ_t < y}."""
    return first_passage_above(grid.negate(), -level)


def last_above(grid: PathGrid, level: float) -> float:
    """sup{t: ξ_t > z}; the life start if the set is empty."""
    candidates = []
    point_hits = np.flatnonzero(grid.values > level)
    if point_hits.size:
        candidates.append(float(grid.times[point_hits[-1]]))
    if grid.n_points > 1:
        hits = np.flatnonzero(grid.bridge_max > level)
        if hits.size:
            i = int(hits[-1])
            a, b = grid.values[i], grid.left_values[i + 1]
            t0, t1 = grid.times[i], grid.times[i + 1]
            if b > level:
                candidates.append(float(t1))
            elif a > level:
                candidates.append(float(t0 + (a - level) / (a - b) * (t1 - t0)))
            else:
                candidates.append(float(0.5 * (t0 + t1)))
    return max(candidates) if candidates else grid.start


def last_below(grid: PathGrid, level: float) -> float:
    """sup{t: ξ_t ≤ z}; the life start if the set is empty."""
    candidates = []
    point_hits = np.flatnonzero(grid.values <= level)
    if point_hits.size:
        candidates.append(float(grid.times[point_hits[-1]]))
    if grid.n_points > 1:
        hits = np.flatnonzero(grid.bridge_min <= level)
        if hits.size:
            i = int(hits[-1])
            a, b = grid.values[i], grid.left_values[i + 1]
            t0, t1 = grid.times[i], grid.times[i + 1]
            if b <= level:
                candidates.append(float(t1))
            elif a <= level:
                candidates.append(float(t0 + (level - a) / (b - a) * (t1 - t0)))
            else:
                candidates.append(float(0.5 * (t0 + t1)))
    return max(candidates) if candidates else grid.start


def occupation_above(grid: PathGrid, level: float = 0.0) -> float:
    """Lebesgue time spent above ``level``, sign changes located by linear
    interpolation inside each interval."""
    if grid.n_points < 2:
        return 0.0
    a = grid.values[:-1] - level
    b = grid.left_values[1:] - level
    dt = np.diff(grid.times)
    fraction = np.zeros_like(dt)
    fraction[(a > 0) & (b > 0)] = 1.0
    down = (a > 0) & (b <= 0)
    up = (a <= 0) & (b > 0)
    fraction[down] = a[down] / (a[down] - b[down])
    fraction[up] = b[up] / (b[up] - a[up])
    return float(np.sum(fraction * dt))


def path_stats(path: PathLike, levels: Iterable[float] = ()) -> PathStats:
    """All functionals of ``path`` over its life-interval.

    Args:
        path: One-sided or two-sided path
        levels: Extra levels y for τ_y, last_below and last_above

    Returns:
        PathStats
    """
    grid = as_grid(path)
    sup, argmax = supremum(grid)
    inf, argmin = infimum(grid)

    passage: Dict[float, float] = {}
    below: Dict[float, float] = {}
    above: Dict[float, float] = {}
    for y in {0.0, *map(float, levels)}:
        passage[y] = first_passage_above(grid, y)
        below[y] = last_below(grid, y)
        above[y] = last_above(grid, y)

    return PathStats(
        sup=sup,
        argmax=argmax,
        inf=inf,
        argmin=argmin,
        tau=passage[0.0],
        first_neg=first_passage_below(grid, 0.0),
        occupation_pos=occupation_above(grid, 0.0),
        last_pos=above[0.0],
        passage=passage,
        last_below=below,
        last_above=above,
        life=(grid.start, grid.end),
    )
