"""Catalog of named experiments.

Each experiment samples ensembles through the runner and turns them into
verdict rows. Comparison thresholds never fall below the 1 − null_quantile
critical value at the effective sample size, so a smaller desk run keeps
honest thresholds.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..models.cramer import dual_model, phi_exponent
from ..models.levy_model import LevyModel
from ..samplers.overshoot import cramer_constants_from
from ..stats.checks import (
    TestRow,
    at_least,
    at_most,
    binomial_z,
    close_to,
    mean_se,
    non_increasing,
    within_se,
)
from ..stats.distances import (
    CDF,
    DistanceResult,
    calibrated_null_threshold,
    exponential_cdf,
    ks_critical_value,
    ks_distance,
    tabulated_cdf,
    wasserstein1,
)
from ..stats.empirical import EmpiricalDistribution
from ..stats.ruin import debt_time_cdf_table, debt_time_laplace, debt_time_laplace_numeric
from ..stats.tails import tail_exponent_fit
from ..utils.config import ConfigManager
from ..utils.exceptions import ConfigurationError, ExperimentError, InsufficientExceedancesError
from ..utils.logger import Logger
from ..utils.performance_monitor import PerformanceMonitor
from ..utils.random_streams import substream
from .config import ExperimentConfig
from .report import Ensemble, ExperimentReport
from .runner import Columns, ExperimentRunner
from .tasks import (
    Task,
    TaskPayload,
    conditioned_is_task,
    conditioned_rejection_task,
    excursion_two_sided_task,
    excursion_williams_task,
    first_passage_laplace_task,
    key,
    last_passage_task,
    p_down_task,
    ptilde_up_task,
    rho_task,
    rho_tilde_task,
    script_P_task,
    script_Q_task,
    supremum_task,
)

logger = Logger(__name__)

Weighted = Tuple[np.ndarray, np.ndarray]
SampleArg = Union[np.ndarray, Weighted]


@dataclass(frozen=True)
class Experiment:
    """Catalog entry.

    Attributes:
        name: Name used in configuration files
        anchor: Equation, lemma or corollary the experiment verifies
        claim: One-line statement of what is checked
        models: Models the acceptance configurations use
        run: Body; appends verdict rows to the context
    """
    name: str
    anchor: str
    claim: str
    models: str
    run: Callable[["ExperimentContext"], None]

    def to_dict(self) -> Dict[str, str]:
        return {'name': self.name, 'anchor': self.anchor, 'claim': self.claim, 'models': self.models}


CATALOG: Dict[str, Experiment] = {}


def register(name: str, anchor: str, claim: str, models: str):
    """Decorator adding an experiment body to the catalog."""
    def decorator(fn: Callable[["ExperimentContext"], None]) -> Callable[["ExperimentContext"], None]:
        CATALOG[name] = Experiment(name, anchor, claim, models, fn)
        return fn
    return decorator


def list_experiments() -> List[Experiment]:
    return [CATALOG[name] for name in sorted(CATALOG)]


def get_experiment(name: str) -> Experiment:
    """Catalog entry by name.

    Raises:
        ConfigurationError: Listing the catalog if the name is unknown
    """
    try:
        return CATALOG[name]
    except KeyError:
        names = ', '.join(sorted(CATALOG))
        raise ConfigurationError(f"experiment: unknown experiment {name!r}; available: {names}")


class ExperimentContext:
    """Sampling and comparison helpers shared by the experiment bodies."""

    def __init__(self, config: ExperimentConfig, runner: ExperimentRunner,
                 config_manager: ConfigManager):
        self.config = config
        self.runner = runner
        self.model = config.model
        assert self.model.theta is not None
        self.theta: float = self.model.theta
        self.settings = config.settings(config_manager)

        stats = config_manager.get_stats_config()
        self.min_ess = float(config.param('min_ess', stats.get('min_ess', 100)))
        self.null_quantile = float(stats.get('null_quantile', 0.99))
        self.null_factor = float(stats.get('null_factor', 1.5))
        self.null_pairs = int(config.param('null_pairs', stats.get('null_pairs', 20)))
        self.bootstrap = int(stats.get('bootstrap', 200))

        self.rows: List[TestRow] = []
        self.ensembles: List[Ensemble] = []
        self.excursions: Dict[str, Columns] = {}

    @property
    def n(self) -> int:
        return self.config.replicates

    def param(self, name: str, default):
        return self.config.param(name, default)

    def ladder(self, default: Sequence[float]) -> Tuple[float, ...]:
        return self.config.x_ladder or tuple(default)

    def levels(self, default: Sequence[float]) -> Tuple[float, ...]:
        return self.config.levels or tuple(default)

    def payload(self, model: Optional[LevyModel] = None, **params) -> TaskPayload:
        return TaskPayload(model or self.model, self.settings, params, self.config.horizons)

    def sample(self, task: Task, stream: str, n: Optional[int] = None,
               model: Optional[LevyModel] = None, **params) -> Columns:
        """Run an ensemble on its own named stream."""
        return self.runner.map(task, self.payload(model, **params), self.config.seed,
                               stream, n or self.n)

    def rng(self, name: str) -> np.random.Generator:
        """Auxiliary generator (bootstrap, quadrature) on its own stream."""
        return substream(self.config.seed, f"aux/{name}", 0)

    def record(self, name: str, values: np.ndarray, weights: Optional[np.ndarray] = None) -> None:
        self.ensembles.append(Ensemble(name, np.asarray(values, dtype=float),
                                       None if weights is None else np.asarray(weights, dtype=float)))

    def add(self, row: TestRow) -> TestRow:
        self.rows.append(row)
        return row

    def insufficient(self, test_id: str, ess: float, reason: str = '') -> TestRow:
        logger.warning("Not enough data for a verdict", test_id=test_id, ess=ess, reason=reason)
        return self.add(TestRow(test_id, math.nan, math.nan, float(ess), False))

    @staticmethod
    def distribution(sample: SampleArg) -> Optional[EmpiricalDistribution]:
        """Finite part of a sample; None when nothing is left."""
        if isinstance(sample, tuple):
            values, weights = (np.asarray(a, dtype=float) for a in sample)
        else:
            values, weights = np.asarray(sample, dtype=float), None
        keep = np.isfinite(values)
        if weights is not None:
            keep &= weights > 0
        if not np.any(keep):
            return None
        return EmpiricalDistribution.from_samples(values[keep],
                                                  None if weights is None else weights[keep])

    def _both(self, test_id: str, a: SampleArg, b: SampleArg):
        da, db = self.distribution(a), self.distribution(b)
        ess = min(da.ess if da else 0.0, db.ess if db else 0.0)
        if da is None or db is None or ess < self.min_ess:
            self.insufficient(test_id, ess, "effective sample size below stats.min_ess")
            return None
        return da, db

    def effective_size(self, test_id: str, weights: np.ndarray) -> TestRow:
        """Kish effective size of importance weights ≥ params.min_effective_n."""
        minimum = float(self.param('min_effective_n', 5000))
        dist = self.distribution((np.ones_like(weights), weights))
        ess = dist.ess if dist is not None else 0.0
        return self.add(at_least(test_id, ess, minimum, ess))

    def critical(self, ess: float) -> float:
        return ks_critical_value(ess, 1.0 - self.null_quantile)

    def ks(self, test_id: str, a: SampleArg, b: Union[SampleArg, CDF], tolerance: float) -> TestRow:
        """KS distance ≤ max(tolerance, null critical value)."""
        if callable(b):
            da = self.distribution(a)
            if da is None or da.ess < self.min_ess:
                return self.insufficient(test_id, da.ess if da else 0.0)
            result = ks_distance(da, b)
        else:
            pair = self._both(test_id, a, b)
            if pair is None:
                return self.rows[-1]
            result = ks_distance(*pair)
        threshold = max(tolerance, self.critical(result.ess))
        return self.add(at_most(test_id, result.statistic, threshold, result.ess))

    def w1(self, test_id: str, a: SampleArg, reference: SampleArg, tolerance: float) -> TestRow:
        """W₁ ≤ max(tolerance, 2·sd(reference)/√ess)."""
        pair = self._both(test_id, a, reference)
        if pair is None:
            return self.rows[-1]
        result = wasserstein1(*pair)
        ref = pair[1]
        mean = np.average(ref.values, weights=ref.weights)
        sd = math.sqrt(float(np.average((ref.values - mean) ** 2, weights=ref.weights)))
        threshold = max(tolerance, 2.0 * sd / math.sqrt(result.ess))
        return self.add(at_most(test_id, result.statistic, threshold, result.ess))

    def binomial(self, test_id: str, hits: np.ndarray, p: float, k: float = 4.0) -> TestRow:
        """Observed frequency within k binomial standard errors of p."""
        n = int(hits.size)
        return self.add(at_most(test_id, abs(binomial_z(int(np.sum(hits)), n, p)), k, float(n)))

    def agree(self, test_id: str, a: Tuple[float, float], b: Tuple[float, float],
              k: float = 3.0) -> TestRow:
        """Two estimates (value, se) within k combined standard errors."""
        se = math.hypot(a[1], b[1])
        return self.add(within_se(test_id, a[0], b[0], se, k, float(self.n)))

    def null_calibrated(self, test_id: str, observed: DistanceResult,
                        null_statistics: Sequence[float]) -> TestRow:
        threshold = calibrated_null_threshold(null_statistics, self.null_quantile, self.null_factor)
        return self.add(at_most(test_id, observed.statistic, threshold, observed.ess))


def _weighted(columns: Columns, name: str) -> Weighted:
    return columns[name], columns['weight']


def _is_stream(x: float, tag: str = '') -> str:
    return f"is{tag}/x={x:g}"


def _median_trend(ctx: ExperimentContext, test_id: str, ladder: Sequence[float],
                  distance: Callable[[Columns], float]) -> TestRow:
    """Distances along the x ladder, medians over independent seeds,
    non-increasing up to a 1/√n slack."""
    seeds = int(ctx.param('trend_seeds', 10))
    n_trend = int(ctx.param('trend_replicates', max(100, ctx.n // 10)))
    medians = []
    for x in ladder:
        values = [distance(ctx.sample(conditioned_is_task, _is_stream(x, f"/trend{s}"), n_trend, x=x))
                  for s in range(seeds)]
        medians.append(float(np.median(values)))
    return ctx.add(non_increasing(test_id, medians, slack=1.0 / math.sqrt(n_trend)))


def _oracle(ctx: ExperimentContext, test_id: str, x: float, shift: str,
            rejection_field: str, is_field: str) -> TestRow:
    """Rejection vs importance sampling at x, against an IS-vs-IS null."""
    n_oracle = int(ctx.param('oracle_replicates', max(100, ctx.n // 10)))
    rejection = ctx.sample(conditioned_rejection_task, f"rejection/{shift}/x={x:g}", n_oracle,
                           x=x, shift=shift)
    weighted = ctx.sample(conditioned_is_task, _is_stream(x, '/oracle'), n_oracle, x=x)
    pair = ctx._both(test_id, rejection[rejection_field], _weighted(weighted, is_field))
    if pair is None:
        return ctx.rows[-1]
    observed = ks_distance(*pair)

    null = []
    for j in range(ctx.null_pairs):
        a = ctx.sample(conditioned_is_task, _is_stream(x, f"/null{j}a"), n_oracle, x=x)
        b = ctx.sample(conditioned_is_task, _is_stream(x, f"/null{j}b"), n_oracle, x=x)
        da, db = ctx.distribution(_weighted(a, is_field)), ctx.distribution(_weighted(b, is_field))
        if da is not None and db is not None:
            null.append(ks_distance(da, db).statistic)
    if not null:
        return ctx.insufficient(test_id, observed.ess, "no null replicate")
    return ctx.null_calibrated(test_id, observed, null)


def _require_no_negative_jumps(ctx: ExperimentContext, name: str) -> None:
    if ctx.model.has_negative_jumps:
        raise ExperimentError(f"{name} needs a model without negative jumps")


@register('exp_supremum', 'Lemma 1 (C = 1)',
          'P(sup ξ > a) = e^{−θa} when ξ has no positive jumps', 'BM(−1,1)')
def exp_supremum(ctx: ExperimentContext) -> None:
    if ctx.model.has_positive_jumps:
        raise ExperimentError("exp_supremum needs a model without positive jumps")
    sup = ctx.sample(supremum_task, 'supremum')['sup']
    ctx.record('sup', sup)
    ctx.ks('ks_sup_vs_exp', sup, exponential_cdf(ctx.theta), ctx.param('tolerance', 0.01))
    for y in ctx.levels((0.5, 1.0, 2.0)):
        ctx.binomial(key('sup_gt_y', y), sup > y, math.exp(-ctx.theta * y))


@register('cramer_constant', 'Lemma 1',
          'e^{−θx}P_x(sup ξ > 0) tends to a constant C, and c(θ)·C = 1', 'JD1, BM(−1,1)')
def cramer_constant(ctx: ExperimentContext) -> None:
    ladder = ctx.ladder((-3.0, -6.0))
    estimates = {}
    for x in ladder:
        weights = ctx.sample(conditioned_is_task, _is_stream(x), x=x)['weight']
        ctx.record(key('weight_x', x), weights)
        estimates[x] = mean_se(weights)
    for a, b in zip(ladder, ladder[1:]):
        ctx.agree(f"C_agree_x{a:g}_x{b:g}", estimates[a], estimates[b])
    if not ctx.model.has_positive_jumps:
        for x in ladder:
            ctx.add(close_to(key('C_equals_one_x', x), estimates[x][0], 1.0, 0.01, float(ctx.n)))

    weights = ctx.sample(rho_tilde_task, 'rho_tilde')['weight']
    attempts = ctx.sample(rho_task, 'rho')['attempts']
    constants = cramer_constants_from(weights, attempts, ctx.rng('bootstrap'), ctx.bootstrap)
    ctx.add(within_se('c_theta_times_C', constants.product, 1.0, constants.product_se, 4.0,
                      float(ctx.n)))
    ctx.agree('C_rho_vs_importance', (constants.C, constants.C_se), estimates[ladder[-1]], k=4.0)


@register('cramer_time_constancy', 'Lemma 1 with σ ≥ t',
          'e^{−θx}P_x(sup ξ > 0, σ ≥ t) tends to C for every t', 'JD1')
def cramer_time_constancy(ctx: ExperimentContext) -> None:
    ladder = ctx.ladder((-3.0, -6.0))
    times = [float(t) for t in ctx.param('times', (0.0, 0.5, 1.0))]
    ensembles = {x: ctx.sample(conditioned_is_task, _is_stream(x), x=x) for x in ladder}
    for t in times:
        estimates = {x: mean_se(cols['weight'] * (cols['sigma'] >= t)) for x, cols in ensembles.items()}
        for a, b in zip(ladder, ladder[1:]):
            ctx.agree(f"C_t{t:g}_agree_x{a:g}_x{b:g}", estimates[a], estimates[b])
        deep = ensembles[ladder[-1]]
        lost, se = mean_se(deep['weight'] * (deep['sigma'] < t))
        ctx.add(within_se(key('C_lost_before_t', t), lost, 0.0, se, 4.0, float(ctx.n)))


@register('overshoot_stationarity', 'Eq. (8)',
          'the undershoot/overshoot law ρ̃ does not depend on the passage level', 'JD1')
def overshoot_stationarity(ctx: ExperimentContext) -> None:
    factors = [float(f) for f in ctx.param('level_factors', (10.0, 20.0))]
    tolerance = ctx.param('tolerance', 0.02)
    ensembles = [ctx.sample(rho_tilde_task, key('rho_tilde/level', f), level=f / ctx.theta)
                 for f in factors]
    for (fa, a), (fb, b) in zip(zip(factors, ensembles), zip(factors[1:], ensembles[1:])):
        for name in ('overshoot', 'undershoot'):
            ctx.ks(f"{name}_level{fa:g}_vs_{fb:g}", a[name], b[name], tolerance)


@register('quasi_stationarity', 'Eq. (9)',
          '𝒫(sup ξ > y) = e^{−θy}, and 𝒫 shifted at τ_y given sup ξ > y is 𝒫 again', 'BM(−1,1), JD1')
def quasi_stationarity(ctx: ExperimentContext) -> None:
    levels = ctx.levels((0.5, 1.0, 2.0))
    cols = ctx.sample(script_P_task, 'script_P', levels=levels)
    fresh = ctx.sample(script_P_task, 'script_P/fresh', int(ctx.param('resample_replicates', ctx.n)))
    ctx.record('sup', cols['sup'])
    tolerance = ctx.param('tolerance', 0.02)
    for y in levels:
        ctx.binomial(key('sup_gt_y', y), cols['sup'] > y, math.exp(-ctx.theta * y))
        ctx.ks(key('reshift_overshoot_y', y), cols[key('over_y', y)], fresh['xi0'], tolerance)
        ctx.ks(key('reshift_undershoot_y', y), cols[key('under_y', y)], fresh['undershoot'], tolerance)
        above = cols['sup'] > y
        ctx.ks(key('conditioned_sup_y', y), cols['sup'][above] - y, fresh['sup'], tolerance)


@register('theorem1_shift_at_entrance', 'Theorem 1',
          'P_x(· | sup ξ > 0) shifted at τ tends to 𝒫 as x → −∞', 'JD1')
def theorem1_shift_at_entrance(ctx: ExperimentContext) -> None:
    ladder = ctx.ladder((-2.0, -4.0, -6.0))
    tolerance = ctx.param('tolerance', 0.03)
    rho = ctx.sample(rho_task, 'rho')
    deep = ctx.sample(conditioned_is_task, _is_stream(ladder[-1]), x=ladder[-1])
    ctx.record('overshoot', deep['overshoot'], deep['weight'])
    ctx.effective_size(key('effective_n_x', ladder[-1]), deep['weight'])
    ctx.ks(key('overshoot_vs_rho_x', ladder[-1]), _weighted(deep, 'overshoot'), rho['overshoot'], tolerance)
    ctx.ks(key('undershoot_vs_rho_x', ladder[-1]), _weighted(deep, 'undershoot'), rho['undershoot'],
           tolerance)

    reference = ctx.distribution(rho['overshoot'])
    assert reference is not None
    _median_trend(ctx, 'overshoot_distance_trend', ladder,
                  lambda cols: _distance_or_one(_weighted(cols, 'overshoot'), reference, ks_distance))
    _oracle(ctx, key('oracle_rejection_vs_is_x', ladder[0]), ladder[0], 'tau', 'xi0', 'overshoot')


def _distance_or_one(sample: Weighted, reference: EmpiricalDistribution,
                     metric: Callable[..., DistanceResult]) -> float:
    dist = ExperimentContext.distribution(sample)
    return 1.0 if dist is None else metric(dist, reference).statistic


@register('theorem2_shift_at_max', 'Theorem 2, Lemma 1 (reversed pre-maximum)',
          'P_x(· | sup ξ > 0) shifted at σ tends to 𝒬 as x → −∞', 'BM(−1,1), JD1')
def theorem2_shift_at_max(ctx: ExperimentContext) -> None:
    ladder = ctx.ladder((-2.0, -4.0, -6.0))
    after = float(ctx.param('after', 1.0))
    reversal_time = float(ctx.param('reversal_time', 0.5))
    tolerance = ctx.param('tolerance', 0.03)

    eta_down = ctx.sample(p_down_task, 'p_down', time=after)['eta_down']
    eta_up = ctx.sample(ptilde_up_task, 'ptilde_up', time=reversal_time)['eta_up']
    deep = ctx.sample(conditioned_is_task, _is_stream(ladder[-1]), x=ladder[-1],
                      after=after, reversal_time=reversal_time)
    ctx.record('after_max', deep['after_max'], deep['weight'])

    ctx.w1(key('after_max_vs_eta_down_x', ladder[-1]), _weighted(deep, 'after_max'), eta_down,
           ctx.param('w1_tolerance', 0.05))
    ctx.ks(key('sup_vs_exp_x', ladder[-1]), _weighted(deep, 'sup'), exponential_cdf(ctx.theta), tolerance)
    ctx.ks(key('reversed_pre_max_vs_eta_up_x', ladder[-1]), _weighted(deep, 'reversed_pre_max'),
           eta_up, tolerance)

    reference = ctx.distribution(eta_down)
    assert reference is not None
    _median_trend(ctx, 'after_max_distance_trend', ladder,
                  lambda cols: _distance_or_one(_weighted(cols, 'after_max'), reference, wasserstein1))
    _oracle(ctx, key('oracle_rejection_vs_is_x', ladder[0]), ladder[0], 'sigma', 'after_max', 'after_max')


@register('q_shift_at_entrance', 'Eq. (12′)',
          '𝒬 shifted at its first entrance into (0, ∞) is 𝒫', 'JD1')
def q_shift_at_entrance(ctx: ExperimentContext) -> None:
    tolerance = ctx.param('tolerance', 0.03)
    q = ctx.sample(script_Q_task, 'script_Q')
    rho = ctx.sample(rho_task, 'rho')
    ctx.ks('entrance_overshoot_vs_rho', q['entrance_overshoot'], rho['overshoot'], tolerance)
    ctx.ks('entrance_undershoot_vs_rho', q['entrance_undershoot'], rho['undershoot'], tolerance)
    peak_tolerance = ctx.param('peak_tolerance', 0.015)
    peak = q['sup']
    ctx.ks('peak_vs_exp', peak, exponential_cdf(ctx.theta), peak_tolerance)
    for y in ctx.levels((1.0,)):
        ctx.ks(key('peak_memoryless_y', y), peak[peak > y] - y, exponential_cdf(ctx.theta),
               peak_tolerance)


@register('reversal_pre_max', 'Corollary 3',
          'σ under P has the law of the last passage of η̃↑ below an independent Exp(θ) level',
          'BM(−1,1)')
def reversal_pre_max(ctx: ExperimentContext) -> None:
    t = float(ctx.param('reversal_time', 0.5))
    tolerance = ctx.param('tolerance', 0.03)
    under_p = ctx.sample(supremum_task, 'supremum', reversal_time=t)
    passage = ctx.sample(last_passage_task, 'last_passage', reversal_time=t)
    ctx.record('sigma', under_p['argmax'])
    ctx.record('last_passage', passage['last_below'])
    ctx.ks('sigma_vs_last_passage', under_p['argmax'], passage['last_below'], tolerance)
    # NaN where σ ≤ t or ℓ(ε) ≤ t; the comparison keeps the finite part
    ctx.ks(key('reversed_pre_max_vs_eta_up_t', t), under_p['reversed_pre_max'], passage['eta_up'],
           tolerance)


@register('exp_divisor', 'Corollary 3 (divisor remark)',
          'sup ξ under P plus an independent ρ overshoot is Exp(θ)', 'JD1')
def exp_divisor(ctx: ExperimentContext) -> None:
    a = ctx.sample(supremum_task, 'supremum')['sup']
    b = ctx.sample(rho_task, 'rho')['overshoot']
    ctx.record('sup_plus_overshoot', a + b)
    ctx.ks('sum_vs_exp', a + b, exponential_cdf(ctx.theta), ctx.param('tolerance', 0.015))


@register('last_passage_reversal', 'Corollary 4',
          '𝒫 reversed at its last passage above 0 is 𝒫 of the dual model', 'BM(−1,1)')
def last_passage_reversal(ctx: ExperimentContext) -> None:
    times = [float(t) for t in ctx.param('times', (1.0,))]
    reversed_ = ctx.sample(script_P_task, 'script_P', times=times)
    fresh = ctx.sample(script_P_task, 'script_P/dual', model=dual_model(ctx.model), times=times)
    for t in times:
        ctx.ks(key('reversed_vs_dual_t', t), reversed_[key('reversed_t', t)], fresh[key('value_t', t)],
               ctx.param('tolerance', 0.03))


@register('sparre_andersen', 'Corollary 5 (Sparre Andersen identity)',
          'under the dual P′, σ and the time spent above 0 share one law with E′(e^{−aσ}) = θ/Φ(a)',
          'BM(−1,1)')
def sparre_andersen(ctx: ExperimentContext) -> None:
    dual = dual_model(ctx.model)
    sigma = ctx.sample(supremum_task, 'dual/sigma', model=dual)['argmax']
    occupation = ctx.sample(supremum_task, 'dual/occupation', model=dual)['occupation']
    ctx.ks('sigma_vs_occupation', sigma, occupation, ctx.param('tolerance', 0.02))
    if ctx.model.has_negative_jumps:
        return
    for a in (float(v) for v in ctx.param('laplace_args', (1.0,))):
        target = debt_time_laplace(ctx.model, a)
        for name, values in (('sigma', sigma), ('occupation', occupation)):
            mean, se = mean_se(np.exp(-a * values))
            ctx.add(at_most(f"laplace_{name}_a{a:g}", abs(mean / target - 1.0),
                            max(0.01, 4.0 * se / target), float(values.size)))


@register('phi_first_passage', 'Corollary 5 (first-passage exponent)',
          "E′(e^{−aτ_x}) = e^{−xΦ(a)} under the dual P′", 'BM(−1,1)')
def phi_first_passage(ctx: ExperimentContext) -> None:
    _require_no_negative_jumps(ctx, 'phi_first_passage')
    dual = dual_model(ctx.model)
    levels = ctx.levels((0.5, 1.0))
    a = float(ctx.param('a', 1.0))
    phi = phi_exponent(dual, a)
    cols = ctx.sample(first_passage_laplace_task, 'dual/passage', model=dual, levels=levels, a=a)
    for y in levels:
        mean, se = mean_se(cols[key('discount_y', y)])
        ctx.add(within_se(key('laplace_passage_y', y), mean, math.exp(-y * phi), se, 4.0, float(ctx.n)))


@register('debt_time', 'Corollary 5',
          'the debt time given ruin tends to θE(ξ_t⁻e^{θξ_t})dt/t, a probability law with '
          'Laplace transform θ/Φ(a)', 'BM(−1,1)')
def debt_time(ctx: ExperimentContext) -> None:
    _require_no_negative_jumps(ctx, 'debt_time')
    x = ctx.ladder((-6.0,))[-1]
    cols = ctx.sample(conditioned_is_task, _is_stream(x), x=x)
    ctx.record('debt_time', cols['occupation'], cols['weight'])
    ctx.effective_size(key('effective_n_x', x), cols['weight'])

    times, cdf = debt_time_cdf_table(ctx.model, rng=ctx.rng('debt_time_table'))
    ctx.ks(key('debt_time_vs_limit_x', x), _weighted(cols, 'occupation'), tabulated_cdf(times, cdf),
           ctx.param('tolerance', 0.05))
    quadrature_tolerance = 1e-3 if not ctx.model.active_jumps else 1e-2
    ctx.add(close_to('density_normalization', float(cdf[-1]), 1.0, quadrature_tolerance))

    for a in (float(v) for v in ctx.param('laplace_args', (1.0,))):
        target = debt_time_laplace(ctx.model, a)
        ctx.add(close_to(key('laplace_identity_a', a), debt_time_laplace_numeric(ctx.model, a),
                         target, quadrature_tolerance))
        mean, se = mean_se(np.exp(-a * cols['occupation']), cols['weight'])
        ctx.add(within_se(key('laplace_empirical_a', a), mean, target, se, 4.0, float(ctx.n)))


@register('height_tail', 'Corollary 1',
          'excursion heights satisfy n(H > z) = c·z^{−θ}', 'BM(−0.25,1), BM(−0.4,1)')
def height_tail(ctx: ExperimentContext) -> None:
    if ctx.theta >= 1:
        logger.warning("θ ≥ 1: n is only a pseudo-excursion measure", theta=ctx.theta)
    cols = ctx.sample(excursion_two_sided_task, 'excursion/two_sided')
    ctx.excursions['two_sided'] = cols
    heights = cols['H'][cols['H'] > 1.0]
    try:
        fit = tail_exponent_fit(heights, 1.0, float(ctx.param('z_max', 20.0)),
                                bootstrap=ctx.bootstrap, rng=ctx.rng('tail_bootstrap'),
                                min_exceedances=int(ctx.param('min_exceedances', 1000)))
    except InsufficientExceedancesError as e:
        ctx.insufficient('tail_slope', float(heights.size), str(e))
        return
    ctx.add(close_to('tail_slope', fit.slope, -ctx.theta, ctx.param('tolerance', 0.05),
                     float(fit.n_exceedances)))


@register('williams_decomposition', 'Corollary 2',
          'the excursion glued at its maximum has the law of the Lamperti image of 𝒫',
          'BM(−0.25,1)')
def williams_decomposition(ctx: ExperimentContext) -> None:
    williams = ctx.sample(excursion_williams_task, 'excursion/williams')
    two_sided = ctx.sample(excursion_two_sided_task, 'excursion/two_sided')
    ctx.excursions['williams'] = williams
    ctx.excursions['two_sided'] = two_sided
    zeta = two_sided['zeta'][two_sided['H'] > 1.0]
    ctx.ks('zeta_williams_vs_two_sided', williams['zeta'], zeta, ctx.param('tolerance', 0.03))
    ctx.add(at_most('height_matches_level', float(np.max(williams['height_error'])), 1e-9))
    margin = ctx.settings.margin(ctx.theta)
    ctx.add(at_most('endpoints_vanish', float(np.max(williams['endpoint_ratio'])),
                    2.0 * math.exp(-margin)))


def run_experiment(config: ExperimentConfig, config_manager: Optional[ConfigManager] = None,
                   workers: Optional[int] = None,
                   progress: Optional[bool] = None) -> ExperimentReport:
    """Run one catalog experiment.

    Worker count: ``workers`` > ``parallel.workers`` (LEVYLAB_WORKERS or the
    settings file) > the configuration's ``workers`` > psutil heuristic. The
    count never changes the results.

    Raises:
        ConfigurationError: If the experiment name is unknown
        ExperimentError: If the model does not suit the experiment
    """
    experiment = get_experiment(config.experiment)
    config_manager = config_manager or ConfigManager()
    runner = ExperimentRunner(
        config_manager,
        workers=workers or config_manager.get('parallel.workers') or config.workers,
        progress=progress,
    )
    logger.info("Starting experiment", experiment=experiment.name, seed=config.seed,
                replicates=config.replicates, workers=runner.workers)

    monitor = PerformanceMonitor()
    with monitor.monitor_operation(experiment.name) as metrics:
        ctx = ExperimentContext(config, runner, config_manager)
        experiment.run(ctx)

    report = ExperimentReport(
        experiment=experiment.name,
        anchor=experiment.anchor,
        model=config.model.to_dict(),
        seed=config.seed,
        tests=list(ctx.rows),
        wall_time_s=metrics.duration,
        ensembles=ctx.ensembles,
        excursions=ctx.excursions,
    )
    logger.log_experiment(experiment.name, report.passed, {
        'tests': len(report.tests),
        'failed': [row.test_id for row in report.failed],
        'memory_delta_mb': metrics.memory_delta,
        **runner.get_run_stats(),
    })
    return report
