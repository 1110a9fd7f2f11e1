"""Hybrid-grid path simulator.

Paths are simulated on regular steps merged with the exact epochs of the
compound-Poisson jumps. Each interval carries exact draws of the Brownian
bridge maximum and minimum, and stop rules are evaluated chunk by chunk with
vectorized running extremes.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, NamedTuple, Optional, Tuple

import numpy as np

from ..models.levy_model import LevyModel
from ..utils.exceptions import HorizonExhaustedError, SimulationError
from .grid import SampledPath

_MIN_CHUNK = 32


@dataclass(frozen=True)
class SimulationSettings:
    """Numerical settings shared by every sampler.

    Attributes:
        step: Regular grid spacing
        stop_decades: Adaptive stop margin in decades of missed-supremum
            probability; K = stop_decades·ln 10/θ
        chunk_steps: Largest number of regular steps simulated at once
        max_time: Time cap for adaptive and passage rules
        rejection_budget: Attempts allowed to rejection samplers
        rho_level_factor: Passage level of the ρ̃ sampler, in units of 1/θ
    """
    step: float = 0.01
    stop_decades: float = 6.0
    chunk_steps: int = 4096
    max_time: float = 1.0e5
    rejection_budget: int = 100000
    rho_level_factor: float = 10.0

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise SimulationError(f"step must be positive, got {self.step}")
        if not self.stop_decades > 0 or not self.max_time > 0:
            raise SimulationError("stop_decades and max_time must be positive")
        if self.chunk_steps < 1 or self.rejection_budget < 1:
            raise SimulationError("chunk_steps and rejection_budget must be positive")

    @classmethod
    def from_config(cls, config: Any, step: Optional[float] = None) -> "SimulationSettings":
        """Build from a ``ConfigManager`` (``simulation.*`` keys)."""
        sim: Dict[str, Any] = config.get_simulation_config()
        return cls(
            step=float(step if step is not None else sim.get('step', cls.step)),
            stop_decades=float(sim.get('stop_decades', cls.stop_decades)),
            chunk_steps=int(sim.get('chunk_steps', cls.chunk_steps)),
            max_time=float(sim.get('max_time', cls.max_time)),
            rejection_budget=int(sim.get('rejection_budget', cls.rejection_budget)),
            rho_level_factor=float(sim.get('rho_level_factor', cls.rho_level_factor)),
        )

    def with_step(self, step: float) -> "SimulationSettings":
        return replace(self, step=step)

    def margin(self, theta: float) -> float:
        """Adaptive stop margin K; the supremum is missed with probability ≤ 10^−stop_decades."""
        return self.stop_decades * math.log(10.0) / theta


DEFAULT_SETTINGS = SimulationSettings()


class StopRule(Enum):
    FIXED = "horizon"
    FALL_BELOW_MAX = "fall_below_max"
    RISE_ABOVE_MIN = "rise_above_min"
    PASSAGE = "passage"


@dataclass(frozen=True)
class HorizonPolicy:
    """When to stop simulating.

    Attributes:
        rule: Stop rule
        horizon: Fixed horizon, or a time cap for the other rules
        margin: K for the adaptive rules; derived from θ when omitted
        level: Passage level for ``PASSAGE``
        floor: Adaptive rules also require the value to be K beyond this level
        clearance: Extra distance beyond K from the running extreme
        min_after_extreme: Keep going at least this long after the running extreme
        give_up_below_max: ``PASSAGE`` also stops on the falling rule
    """
    rule: StopRule
    horizon: Optional[float] = None
    margin: Optional[float] = None
    level: Optional[float] = None
    floor: Optional[float] = None
    clearance: float = 0.0
    min_after_extreme: float = 0.0
    give_up_below_max: bool = False

    @classmethod
    def fixed(cls, horizon: float) -> "HorizonPolicy":
        if not horizon > 0:
            raise SimulationError(f"fixed horizon must be positive, got {horizon}")
        return cls(StopRule.FIXED, horizon=float(horizon))

    @classmethod
    def adaptive(cls, margin: Optional[float] = None, floor: Optional[float] = None,
                 min_after_max: float = 0.0, cap: Optional[float] = None) -> "HorizonPolicy":
        """Stop once the path is K below its running maximum."""
        return cls(StopRule.FALL_BELOW_MAX, horizon=cap, margin=margin, floor=floor,
                   min_after_extreme=min_after_max)

    @classmethod
    def rising(cls, margin: Optional[float] = None, clearance: float = 0.0,
               cap: Optional[float] = None) -> "HorizonPolicy":
        """Stop once the path is K (plus ``clearance``) above its running minimum."""
        return cls(StopRule.RISE_ABOVE_MIN, horizon=cap, margin=margin, clearance=clearance)

    @classmethod
    def passage(cls, level: float, give_up_below_max: bool = False,
                margin: Optional[float] = None, cap: Optional[float] = None) -> "HorizonPolicy":
        """Stop at the first entrance into (level, ∞)."""
        return cls(StopRule.PASSAGE, horizon=cap, level=float(level), margin=margin,
                   give_up_below_max=give_up_below_max)

    @property
    def needs_margin(self) -> bool:
        return self.rule in (StopRule.FALL_BELOW_MAX, StopRule.RISE_ABOVE_MIN) or self.give_up_below_max


class _Chunk(NamedTuple):
    times: np.ndarray
    values: np.ndarray
    left: np.ndarray
    bmax: np.ndarray
    bmin: np.ndarray

    def head(self, k: int) -> "_Chunk":
        return _Chunk(*(a[:k] for a in self))


@dataclass
class _RunningState:
    time: float
    value: float
    max: float
    max_time: float
    min: float
    min_time: float


def bridge_extrema(start: np.ndarray, end: np.ndarray, dt: np.ndarray, sigma: float,
                   rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Exact draws of the maximum and minimum of Brownian bridges.

    For a bridge from a to b over time h with variance σ²h the maximum is
    a + (d + sqrt(d² − 2σ²h·ln U))/2 with d = b − a and U uniform on (0, 1].
    """
    d = end - start
    var = sigma * sigma * dt
    u = 1.0 - rng.random(start.size)
    v = 1.0 - rng.random(start.size)
    hi = start + 0.5 * (d + np.sqrt(d * d - 2.0 * var * np.log(u)))
    lo = start + 0.5 * (d - np.sqrt(d * d - 2.0 * var * np.log(v)))
    return np.maximum(hi, np.maximum(start, end)), np.minimum(lo, np.minimum(start, end))


def _simulate_chunk(model: LevyModel, rng: np.random.Generator, t0: float, x0: float,
                    grid: np.ndarray) -> _Chunk:
    times = grid
    jumps = np.zeros(grid.size)
    active = model.active_jumps
    if active:
        n_jumps = int(rng.poisson(model.jump_rate * (grid[-1] - t0)))
        if n_jumps:
            epochs = rng.uniform(t0, grid[-1], n_jumps)
            if len(active) > 1:
                comp = rng.choice(len(active), size=n_jumps, p=model.jump_probabilities())
            else:
                comp = np.zeros(n_jumps, dtype=int)
            betas = np.array([j.beta for j in active])
            signs = np.array([j.sign for j in active], dtype=float)
            sizes = signs[comp] * rng.exponential(1.0, n_jumps) / betas[comp]
            times = np.concatenate([grid, epochs])
            order = np.argsort(times, kind='stable')
            times = times[order]
            jumps = np.concatenate([jumps, sizes])[order]

    dt = np.diff(times, prepend=t0)
    increments = model.drift * dt + model.sigma * np.sqrt(dt) * rng.standard_normal(times.size)
    diffusion = x0 + np.cumsum(increments)
    jump_part = np.cumsum(jumps)
    values = diffusion + jump_part
    left = diffusion + (jump_part - jumps)
    previous = np.concatenate([[x0], values[:-1]])
    bmax, bmin = bridge_extrema(previous, left, dt, model.sigma, rng)
    return _Chunk(times, values, left, bmax, bmin)


def _running(previous: float, previous_time: float, candidates: np.ndarray,
             times: np.ndarray, upward: bool) -> Tuple[np.ndarray, np.ndarray]:
    """Running extreme and the time it was last renewed."""
    acc = np.maximum.accumulate if upward else np.minimum.accumulate
    ext = acc(np.concatenate([[previous], candidates]))
    renewed = candidates > ext[:-1] if upward else candidates < ext[:-1]
    stamp = np.where(renewed, times, -np.inf)
    stamp_acc = np.maximum.accumulate(np.concatenate([[previous_time], stamp]))[1:]
    return ext[1:], stamp_acc


def _first(mask: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None


def _find_stop(policy: HorizonPolicy, margin: float, chunk: _Chunk,
               state: _RunningState) -> Tuple[Optional[int], Optional[str], Optional[_Chunk]]:
    """Index of the stopping point inside ``chunk`` and the truncated chunk."""
    rule = policy.rule
    if rule == StopRule.FIXED:
        return None, None, None

    stop_idx: Optional[int] = None
    reason: Optional[str] = None
    if rule == StopRule.FALL_BELOW_MAX or (rule == StopRule.PASSAGE and policy.give_up_below_max):
        runmax, since = _running(state.max, state.max_time,
                                 np.maximum(chunk.bmax, chunk.values), chunk.times, upward=True)
        ok = chunk.values <= runmax - margin
        if policy.floor is not None:
            ok &= chunk.values <= policy.floor - margin
        if policy.min_after_extreme > 0:
            ok &= chunk.times - since >= policy.min_after_extreme
        stop_idx, reason = _first(ok), StopRule.FALL_BELOW_MAX.value
    elif rule == StopRule.RISE_ABOVE_MIN:
        runmin, since = _running(state.min, state.min_time,
                                 np.minimum(chunk.bmin, chunk.values), chunk.times, upward=False)
        ok = chunk.values >= runmin + margin + policy.clearance
        if policy.floor is not None:
            ok &= chunk.values >= policy.floor + margin
        if policy.min_after_extreme > 0:
            ok &= chunk.times - since >= policy.min_after_extreme
        stop_idx, reason = _first(ok), StopRule.RISE_ABOVE_MIN.value

    if rule == StopRule.PASSAGE:
        level = policy.level
        assert level is not None
        interval_hit = _first(chunk.bmax > level)
        value_hit = _first(chunk.values > level)
        hit = min((h for h in (interval_hit, value_hit) if h is not None), default=None)
        if hit is not None and (stop_idx is None or hit <= stop_idx):
            if hit == interval_hit:
                t_prev = chunk.times[hit - 1] if hit > 0 else state.time
                a = chunk.values[hit - 1] if hit > 0 else state.value
                b = chunk.left[hit]
                t1 = chunk.times[hit]
                if b > level >= a:
                    t_cross = t_prev + (level - a) / (b - a) * (t1 - t_prev)
                else:
                    t_cross = 0.5 * (t_prev + t1)
                if not t_prev < t_cross < t1:
                    t_cross = 0.5 * (t_prev + t1)
                head = chunk.head(hit + 1)
                times = head.times.copy()
                values = head.values.copy()
                left = head.left.copy()
                bmax = head.bmax.copy()
                bmin = head.bmin.copy()
                times[-1], values[-1], left[-1] = t_cross, level, level
                bmax[-1] = level
                bmin[-1] = min(bmin[-1], a, level)
                return hit, StopRule.PASSAGE.value, _Chunk(times, values, left, bmax, bmin)
            return hit, StopRule.PASSAGE.value, chunk.head(hit + 1)

    if stop_idx is None:
        return None, None, None
    return stop_idx, reason, chunk.head(stop_idx + 1)


def _expected_duration(model: LevyModel, policy: HorizonPolicy, start: float, margin: float) -> float:
    drift = abs(model.mean) or 1.0
    span = margin if policy.needs_margin else 0.0
    if policy.rule == StopRule.PASSAGE and policy.level is not None:
        span = max(span, policy.level - start)
    return 1.25 * (span + policy.clearance) / drift + 1.0


def simulate_path(model: LevyModel, rng: np.random.Generator,
                  policy: Optional[HorizonPolicy] = None, start: float = 0.0,
                  settings: SimulationSettings = DEFAULT_SETTINGS) -> SampledPath:
    """Simulate ξ from ``start`` until the policy says stop.

    Args:
        model: Lévy model (validated, or given with an explicit margin)
        rng: Random substream consumed by this call
        policy: Stop rule; adaptive fall-below-max by default
        start: Initial value ξ_0
        settings: Grid spacing and caps

    Returns:
        SampledPath whose ``stop_reason`` names the rule that fired

    Raises:
        HorizonExhaustedError: If a non-fixed rule did not fire before the cap
    """
    policy = policy or HorizonPolicy.adaptive()
    margin = policy.margin
    if margin is None and policy.needs_margin:
        if model.theta is None:
            raise SimulationError("an adaptive stop rule needs a margin or a validated model")
        margin = settings.margin(model.theta)
    margin = float(margin or 0.0)

    step = settings.step
    cap = policy.horizon if policy.rule == StopRule.FIXED else (policy.horizon or settings.max_time)
    assert cap is not None

    state = _RunningState(0.0, float(start), float(start), 0.0, float(start), 0.0)
    parts = [_Chunk(np.zeros(1), np.array([float(start)]), np.array([float(start)]),
                    np.zeros(0), np.zeros(0))]
    n_steps = int(min(settings.chunk_steps,
                      max(_MIN_CHUNK, math.ceil(_expected_duration(model, policy, start, margin) / step))))
    reason = StopRule.FIXED.value

    while True:
        remaining = cap - state.time
        n = max(1, min(n_steps, math.ceil(remaining / step - 1e-9)))
        grid = state.time + step * np.arange(1, n + 1)
        grid[-1] = min(grid[-1], cap)
        if n > 1 and grid[-1] - grid[-2] < 1e-9 * step:
            grid = grid[:-1]
            grid[-1] = min(cap, grid[-1])

        chunk = _simulate_chunk(model, rng, state.time, state.value, grid)
        stop_idx, stop_reason, head = _find_stop(policy, margin, chunk, state)
        if head is not None:
            chunk = head
        parts.append(chunk)

        cand_max = np.maximum(chunk.bmax, chunk.values)
        cand_min = np.minimum(chunk.bmin, chunk.values)
        k_max, k_min = int(np.argmax(cand_max)), int(np.argmin(cand_min))
        if cand_max[k_max] > state.max:
            state.max, state.max_time = float(cand_max[k_max]), float(chunk.times[k_max])
        if cand_min[k_min] < state.min:
            state.min, state.min_time = float(cand_min[k_min]), float(chunk.times[k_min])
        state.time, state.value = float(chunk.times[-1]), float(chunk.values[-1])

        if stop_idx is not None:
            reason = stop_reason or reason
            break
        if state.time >= cap - 1e-12 * max(1.0, cap):
            if policy.rule != StopRule.FIXED:
                raise HorizonExhaustedError(
                    f"{policy.rule.value} rule did not fire before t={cap:g}")
            break
        n_steps = min(settings.chunk_steps, 2 * n_steps)

    return SampledPath(
        np.concatenate([p.times for p in parts]),
        np.concatenate([p.values for p in parts]),
        np.concatenate([p.left for p in parts]),
        np.concatenate([p.bmax for p in parts]),
        np.concatenate([p.bmin for p in parts]),
        step=step,
        stop_reason=reason,
    )


def extend_path(path: SampledPath, model: LevyModel, rng: np.random.Generator,
                until: float, settings: SimulationSettings = DEFAULT_SETTINGS) -> SampledPath:
    """Continue ``path`` under ``model`` up to time ``until`` (no-op if already longer)."""
    if path.end >= until:
        return path
    tail = simulate_path(model, rng, HorizonPolicy.fixed(until - path.end),
                         start=float(path.values[-1]), settings=settings)
    return path.concat(tail.shift_time(path.end))


def sample_increments(model: LevyModel, rng: np.random.Generator, t: float,
                      size: int) -> np.ndarray:
    """Exact draws of ξ_t (ξ_0 = 0): Gaussian part plus gamma-distributed
    compound-Poisson sums."""
    out = model.drift * t + model.sigma * math.sqrt(t) * rng.standard_normal(size)
    for j in model.active_jumps:
        counts = rng.poisson(j.rate * t, size)
        out = out + j.sign * rng.gamma(counts, 1.0 / j.beta)
    return out
