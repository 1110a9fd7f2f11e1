"""Shift, kill and time-reversal operators on paths."""

from typing import Optional

from ..utils.exceptions import PivotError
from .functionals import first_passage_above, supremum
from .grid import PathLike, SampledPath, TwoSidedPath, as_grid, split_two_sided


def _check_inside(path: PathLike, t: float, what: str) -> None:
    grid = as_grid(path)
    if not grid.contains(t):
        raise PivotError(f"{what} {t:g} outside life-interval [{grid.start:g}, {grid.end:g}]")


def shift_kill(path: PathLike, shift_at: float, kill_at: Optional[float] = None,
               value: Optional[float] = None, mode: str = 'interior') -> TwoSidedPath:
    """Re-origin time so that ``shift_at`` maps to 0, then optionally kill.

    Args:
        path: Path to shift
        shift_at: New time origin, inside the life-interval
        kill_at: Optional killing time (in the new clock); killing at 0
            leaves no forward part
        value: Value of ξ at ``shift_at`` if it falls between grid times
        mode: Bridge annotation rule for the split (see ``PathGrid.split_at``)

    Raises:
        PivotError: If ``shift_at`` lies outside the life-interval
    """
    _check_inside(path, shift_at, "shift time")
    shifted = split_two_sided(as_grid(path), shift_at, value, mode)
    if kill_at is None:
        return shifted
    forward = shifted.forward.truncate(kill_at) if shifted.forward is not None else None
    return TwoSidedPath(shifted.backward, forward)


def shift_at_supremum(path: PathLike) -> TwoSidedPath:
    """Shift at σ, the first instant of the overall supremum."""
    sup, sigma = supremum(as_grid(path))
    return shift_kill(path, sigma, value=sup, mode='peak')


def shift_at_entrance(path: PathLike, level: float = 0.0) -> TwoSidedPath:
    """Shift at τ_y, the first entrance into (y, ∞).

    Raises:
        PivotError: If the path never exceeds ``level``
    """
    grid = as_grid(path)
    tau = first_passage_above(grid, level)
    _check_inside(path, tau, "entrance time")
    value = None if grid.index_of(tau) is not None else level
    return shift_kill(path, tau, value=value, mode='crossing_up')


def reverse_path(path: PathLike, pivot: float) -> TwoSidedPath:
    """Time reversal t ↦ ξ_{(pivot − t)−}.

    Reversing the result about 0 gives back the path shifted at ``pivot``;
    for a pivot at time 0 that is the original path.

    Raises:
        PivotError: If ``pivot`` lies outside the life-interval
    """
    _check_inside(path, pivot, "pivot")
    grid = as_grid(path).split_at(pivot)
    return split_two_sided(grid.reversed_about(pivot), 0.0)


def reversed_pre_maximum(path: PathLike) -> Optional[SampledPath]:
    """t ↦ sup ξ − ξ_{(σ−t)−} on [0, σ − life start); None if σ is the life start."""
    grid = as_grid(path)
    sup, sigma = supremum(grid)
    grid = grid.split_at(sigma, sup, 'peak')
    reversed_ = split_two_sided(grid.reversed_about(sigma), 0.0).forward
    assert reversed_ is not None
    killed = reversed_.truncate(sigma - grid.start)
    if killed is None:
        return None
    return SampledPath(killed.times, sup - killed.values, sup - killed.left_values,
                       sup - killed.bridge_min, sup - killed.bridge_max,
                       step=killed.step, stop_reason="truncated")
