"""Replicate tasks.

Each task maps ``(payload, rng)`` to a flat dict of floats for one replicate.
Tasks live at module level so that worker processes can unpickle them; the
runner builds ``rng`` from the replicate index, never from the worker.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable

import numpy as np

from ..lamperti.excursions import Excursion, excursion_from_two_sided, excursion_williams
from ..models.levy_model import LevyModel
from ..paths.engine import DEFAULT_SETTINGS, HorizonPolicy, SimulationSettings, extend_path, simulate_path
from ..paths.functionals import (
    first_passage_above,
    last_above,
    last_below,
    occupation_above,
    path_stats,
    supremum,
)
from ..paths.grid import SampledPath, is_dead
from ..paths.transforms import reverse_path, reversed_pre_maximum, shift_at_entrance
from ..samplers.conditioned import Horizons, sample_P_down, sample_Ptilde_up
from ..samplers.importance import sample_conditioned_IS, sample_conditioned_rejection
from ..samplers.overshoot import sample_rho, sample_rho_tilde
from ..samplers.two_sided import sample_script_P, sample_script_Q

Row = Dict[str, float]
Task = Callable[["TaskPayload", np.random.Generator], Row]


@dataclass(frozen=True)
class TaskPayload:
    """Everything a replicate needs; shipped once per chunk to the workers.

    Attributes:
        model: Validated model the task simulates
        settings: Simulation settings
        params: Task-specific parameters
        horizons: Lengths kept around the origin of two-sided samples
    """
    model: LevyModel
    settings: SimulationSettings = DEFAULT_SETTINGS
    params: Dict[str, Any] = field(default_factory=dict)
    horizons: Horizons = Horizons()

    def with_params(self, **params: Any) -> "TaskPayload":
        return TaskPayload(self.model, self.settings, {**self.params, **params}, self.horizons)

    def with_model(self, model: LevyModel) -> "TaskPayload":
        return TaskPayload(model, self.settings, dict(self.params), self.horizons)


def key(prefix: str, level: float) -> str:
    """Column name for a level-indexed quantity, e.g. ``over_y0.5``."""
    return f"{prefix}{level:g}"


def _num(value: Any) -> float:
    return math.nan if is_dead(value) else float(value)


def _value_after(path: SampledPath, t: float, payload: TaskPayload,
                 rng: np.random.Generator) -> float:
    """ξ_t of a forward path, simulating past its end if needed."""
    path = extend_path(path, payload.model, rng, t, payload.settings)
    return _num(path.value_at(t))


def _levels(payload: TaskPayload, name: str) -> Iterable[float]:
    return [float(v) for v in payload.params.get(name, ())]


def supremum_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """sup, σ, D and ℓ of an unconditioned path started at 0.

    Params:
        reversal_time: Optional t for sup − ξ_{(σ−t)−}, NaN unless σ > t
    """
    path = simulate_path(payload.model, rng, HorizonPolicy.adaptive(floor=0.0),
                         settings=payload.settings)
    stats = path_stats(path)
    row: Row = {
        'sup': stats.sup,
        'argmax': stats.argmax,
        'occupation': stats.occupation_pos,
        'last_pos': stats.last_pos,
    }
    if 'reversal_time' in payload.params:
        t = float(payload.params['reversal_time'])
        pre_max = reversed_pre_maximum(path) if stats.argmax > t else None
        row['reversed_pre_max'] = math.nan if pre_max is None else _num(pre_max.value_at(t))
    return row


def rho_tilde_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    pair = sample_rho_tilde(payload.model, rng, payload.params.get('level'), payload.settings)
    assert payload.model.theta is not None
    return {
        'undershoot': pair.undershoot,
        'overshoot': pair.overshoot,
        'weight': math.exp(-payload.model.theta * pair.overshoot),
    }


def rho_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    pair = sample_rho(payload.model, rng, payload.settings)
    return {'undershoot': pair.undershoot, 'overshoot': pair.overshoot,
            'attempts': float(pair.attempts)}


def script_P_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """𝒫 sample: (−ξ_{0−}, ξ_0), sup, ℓ, the re-shift at each level y and
    values at fixed times of the path and of its reversal at ℓ.

    Params:
        levels: Levels y for the shift at τ_y
        times: Times t for ξ_t and for the reversal ξ_{(ℓ−t)−}
    """
    sample = sample_script_P(payload.model, rng, payload.horizons, payload.settings)
    grid = sample.grid
    sup, _ = supremum(grid)
    ell = last_above(grid, 0.0)
    row: Row = {
        'sup': sup,
        'xi0': _num(sample.value_at_zero),
        'undershoot': -_num(sample.left_value_at_zero),
        'last_pos': ell,
    }
    for y in _levels(payload, 'levels'):
        over = under = math.nan
        if math.isfinite(first_passage_above(grid, y)):
            shifted = shift_at_entrance(sample, y)
            over = _num(shifted.value_at_zero) - y
            under = y - _num(shifted.left_value_at_zero)
        row[key('over_y', y)] = over
        row[key('under_y', y)] = under

    times = _levels(payload, 'times')
    if times:
        reversed_ = reverse_path(sample, ell)
        assert sample.forward is not None
        for t in times:
            row[key('value_t', t)] = _value_after(sample.forward, t, payload, rng)
            row[key('reversed_t', t)] = _num(reversed_.value_at(t))
    return row


def script_Q_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """𝒬 sample: the peak, ξ_t − ε after it and the re-shift at τ."""
    sample = sample_script_Q(payload.model, rng, payload.horizons, payload.settings)
    assert sample.forward is not None
    epsilon = _num(sample.value_at_zero)
    shifted = shift_at_entrance(sample)
    row: Row = {
        'sup': epsilon,
        'argmax': supremum(sample.grid)[1],
        'entrance_overshoot': _num(shifted.value_at_zero),
        'entrance_undershoot': -_num(shifted.left_value_at_zero),
    }
    for t in _levels(payload, 'times'):
        row[key('after_t', t)] = _value_after(sample.forward, t, payload, rng) - epsilon
    return row


def conditioned_is_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """Weighted draw from P_x(· | sup ξ > 0).

    Params:
        x: Starting level
        after: Time t for ξ_{σ+t} − sup (default 1)
        reversal_time: Time t for sup − ξ_{(σ−t)−} (default 0.5)
    """
    x = float(payload.params['x'])
    after = float(payload.params.get('after', 1.0))
    reversal_time = float(payload.params.get('reversal_time', 0.5))
    draw = sample_conditioned_IS(payload.model, x, rng, payload.horizons, payload.settings)
    grid = draw.path.grid
    sup, sigma = supremum(grid)
    assert draw.path.forward is not None

    pre_max = reversed_pre_maximum(grid)
    reversed_value = math.nan if pre_max is None else _num(pre_max.value_at(reversal_time))
    return {
        'weight': draw.weight,
        'overshoot': draw.overshoot,
        'undershoot': -_num(draw.path.left_value_at_zero),
        'sup': sup,
        'sigma': sigma + draw.entrance_time,
        'after_max': _value_after(draw.path.forward, sigma + after, payload, rng) - sup,
        'reversed_pre_max': reversed_value,
        'occupation': occupation_above(grid, 0.0),
        'last_pos': last_above(grid, 0.0),
    }


def conditioned_rejection_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """Exact draw from P_x(· | sup ξ > 0), shifted at τ or σ.

    Params:
        x: Starting level
        shift: ``'tau'`` or ``'sigma'``
        after: Time t for ξ_t − ξ_0 after a σ-shift (default 1)
    """
    x = float(payload.params['x'])
    shift = payload.params.get('shift', 'tau')
    sample = sample_conditioned_rejection(payload.model, x, rng, shift,
                                          payload.horizons, payload.settings)
    assert sample.forward is not None
    xi0 = _num(sample.value_at_zero)
    row: Row = {'xi0': xi0, 'undershoot': -_num(sample.left_value_at_zero)}
    if shift == 'sigma':
        after = float(payload.params.get('after', 1.0))
        row['after_max'] = _value_after(sample.forward, after, payload, rng) - xi0
    return row


def p_down_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """η↓_t at ``params['time']`` (default 1)."""
    t = float(payload.params.get('time', 1.0))
    path = sample_P_down(payload.model, rng, t, payload.settings)
    return {'eta_down': float(path.values[-1])}


def ptilde_up_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """η̃↑_t at ``params['time']`` (default 0.5)."""
    t = float(payload.params.get('time', 0.5))
    path = sample_Ptilde_up(payload.model, rng, t, settings=payload.settings)
    return {'eta_up': float(path.values[-1])}


def last_passage_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """ℓ(ε) = sup{t: η̃↑_t ≤ ε} for an independent ε ~ Exp(θ).

    Params:
        reversal_time: Optional t for η̃↑_t, NaN unless ℓ(ε) > t
    """
    assert payload.model.theta is not None
    epsilon = float(rng.exponential(1.0 / payload.model.theta))
    path = sample_Ptilde_up(payload.model, rng, min_final_level=epsilon,
                            settings=payload.settings)
    ell = last_below(path, epsilon)
    row: Row = {'epsilon': epsilon, 'last_below': ell}
    if 'reversal_time' in payload.params:
        t = float(payload.params['reversal_time'])
        row['eta_up'] = _num(path.value_at(t)) if ell > t else math.nan
    return row


def first_passage_laplace_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """e^{−aτ_y} for each level y, 0 when the path never reaches y.

    Params:
        levels: Positive levels y
        a: Laplace argument
    """
    levels = sorted(_levels(payload, 'levels'))
    a = float(payload.params.get('a', 1.0))
    policy = HorizonPolicy.passage(levels[-1], give_up_below_max=True)
    path = simulate_path(payload.model, rng, policy, settings=payload.settings)
    row: Row = {}
    for y in levels:
        tau = first_passage_above(path, y)
        row[key('discount_y', y)] = math.exp(-a * tau) if math.isfinite(tau) else 0.0
    return row


def _excursion_row(exc: Excursion) -> Row:
    return {
        'H': exc.height,
        'zeta': exc.duration,
        'lambda': exc.argmax,
        'clock_total': exc.clock_total,
    }


def excursion_two_sided_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """Lamperti image of a 𝒫 sample."""
    sample = sample_script_P(payload.model, rng, payload.horizons, payload.settings)
    return _excursion_row(excursion_from_two_sided(sample))


def excursion_williams_task(payload: TaskPayload, rng: np.random.Generator) -> Row:
    """Excursion glued at its maximum, with height y = e^{Exp(θ)}."""
    assert payload.model.theta is not None
    y = math.exp(rng.exponential(1.0 / payload.model.theta))
    exc = excursion_williams(payload.model, y, rng, payload.settings)
    row = _excursion_row(exc)
    row['y'] = y
    row['height_error'] = abs(float(exc.values.max()) - y) / y
    row['endpoint_ratio'] = min(exc.endpoint_values) / exc.height
    return row
