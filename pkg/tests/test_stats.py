"""Tests for empirical laws, distances, tail fits, debt-time formulas and checks."""

import math

import numpy as np
import pytest
from scipy import integrate

from levylab.models import LevyModel, SpectralConditionError, validate_model
from levylab.models.levy_model import JumpSpec
from levylab.stats import (
    EmpiricalDistribution,
    at_least,
    at_most,
    binomial_z,
    bootstrap_se,
    calibrated_null_threshold,
    close_to,
    debt_time_cdf,
    debt_time_density,
    debt_time_density_mc,
    debt_time_laplace,
    debt_time_laplace_numeric,
    debt_time_normalization,
    exponential_cdf,
    ks_critical_value,
    ks_distance,
    mean_se,
    non_increasing,
    point_mass_cdf,
    tabulated_cdf,
    tail_exponent_fit,
    wasserstein1,
    within_se,
)
from levylab.utils.exceptions import (
    DegenerateSampleError,
    InsufficientExceedancesError,
    StatisticsError,
    ValidationError,
)


class TestEmpiricalDistribution:
    """Test cases for weighted samples."""

    def test_ecdf_and_survival(self):
        dist = EmpiricalDistribution.from_samples([0.0, 1.0, 1.0, 3.0])
        assert dist.ecdf(1.0) == 0.75
        assert dist.ecdf_left(1.0) == 0.25
        assert dist.survival(1.0) == 0.25
        np.testing.assert_allclose(dist.ecdf(np.array([-1.0, 5.0])), [0.0, 1.0])

    def test_weights(self):
        dist = EmpiricalDistribution.from_samples([0.0, 1.0, 2.0], [1.0, 1.0, 2.0], sampler="is")
        assert dist.ess == pytest.approx(16.0 / 6.0)
        assert dist.mean() == pytest.approx(1.25)
        assert dist.quantile(0.5) == 1.0
        assert dist.metadata == {"sampler": "is"}

    def test_restrict_and_map(self):
        dist = EmpiricalDistribution.from_samples([1.0, 2.0, 3.0])
        assert dist.restrict([True, False, True]).n == 2
        assert dist.map(np.log).mean() == pytest.approx(math.log(6.0) / 3.0)

    def test_degenerate(self):
        assert EmpiricalDistribution.from_samples([3.0, 3.0, 3.0]).is_degenerate
        assert not EmpiricalDistribution.from_samples([3.0, 4.0]).is_degenerate

    def test_invalid_samples(self):
        with pytest.raises(DegenerateSampleError):
            EmpiricalDistribution.from_samples([])
        with pytest.raises(StatisticsError):
            EmpiricalDistribution.from_samples([1.0, math.inf])
        with pytest.raises(StatisticsError):
            EmpiricalDistribution.from_samples([1.0, 2.0], [0.0, 0.0])


class TestDistances:
    """Test cases for KS and W1."""

    def test_ks_against_point_mass(self):
        result = ks_distance([0.0, 1.0], point_mass_cdf(0.0))
        assert result.statistic == pytest.approx(0.5)
        assert result.ess == pytest.approx(2.0)

    def test_ks_two_samples(self):
        assert ks_distance([0.0, 1.0], [0.0, 1.0]).statistic == 0.0
        assert ks_distance([0.0, 0.0], [1.0, 1.0]).statistic == 1.0
        assert ks_distance([0.0, 0.0], [1.0, 1.0]).degenerate

    def test_ks_weighted(self):
        a = EmpiricalDistribution.from_samples([0.0, 1.0], [3.0, 1.0])
        assert ks_distance(a, [0.0, 1.0]).statistic == pytest.approx(0.25)

    def test_ks_exponential_sample(self):
        sample = np.random.default_rng(0).exponential(0.5, 5000)
        result = ks_distance(sample, exponential_cdf(2.0))
        assert result.statistic <= ks_critical_value(result.ess, alpha=0.001)

    def test_min_ess(self):
        with pytest.raises(DegenerateSampleError):
            ks_distance([0.0, 1.0], [0.0, 1.0], min_ess=100)

    def test_wasserstein_point_masses(self):
        assert wasserstein1([0.0], [1.0]).statistic == pytest.approx(1.0)
        assert wasserstein1([0.0, 2.0], [1.0, 1.0]).statistic == pytest.approx(1.0)

    def test_critical_value(self):
        assert 0.15 < ks_critical_value(100) < 0.17
        assert ks_critical_value(400) < ks_critical_value(100)
        with pytest.raises(StatisticsError):
            ks_critical_value(100, alpha=1.0)

    def test_null_threshold(self):
        assert calibrated_null_threshold([1.0, 2.0, 3.0], quantile=1.0, factor=1.5) == 4.5
        with pytest.raises(StatisticsError):
            calibrated_null_threshold([])

    def test_tabulated_cdf(self):
        cdf = tabulated_cdf([0.0, 1.0], [0.2, 0.8])
        np.testing.assert_allclose(cdf(np.array([-1.0, 0.5, 2.0])), [0.0, 0.5, 1.0])


class TestTailFit:
    """Test cases for the tail exponent."""

    def test_pareto_tail(self):
        rng = np.random.default_rng(1)
        sample = rng.pareto(2.0, 200_000) + 1.0
        fit = tail_exponent_fit(sample, 1.0, bootstrap=50, rng=rng)
        assert fit.slope == pytest.approx(-2.0, abs=max(0.1, 4 * fit.se))
        assert fit.n_exceedances > 190_000
        assert fit.se > 0

    def test_constant_sample(self):
        with pytest.raises(InsufficientExceedancesError, match="insufficient exceedances"):
            tail_exponent_fit(np.ones(5000), 1.0)

    def test_too_few_exceedances(self):
        with pytest.raises(InsufficientExceedancesError):
            tail_exponent_fit(np.arange(1.0, 501.0), 1.0)

    def test_z_min_positive(self):
        with pytest.raises(StatisticsError):
            tail_exponent_fit(np.ones(10), 0.0)


class TestDebtTime:
    """Test cases for the limit law of the time in debt."""

    def test_brownian_density(self, bm):
        assert debt_time_density(bm, 1.0) == pytest.approx(0.166631, abs=1e-6)
        assert debt_time_density(bm, 4.0) == pytest.approx(0.008491, abs=1e-6)
        np.testing.assert_allclose(debt_time_density(bm, np.array([1.0, 4.0])),
                                   [0.166631, 0.008491], atol=1e-6)

    def test_density_needs_positive_time(self, bm):
        with pytest.raises(ValidationError):
            debt_time_density(bm, 0.0)

    def test_monte_carlo_matches_closed_form(self, bm):
        estimate = debt_time_density_mc(bm, 1.0, n_samples=200_000, rng=np.random.default_rng(2))
        assert abs(estimate.value - 0.166631) <= 4.0 * estimate.se

    def test_laplace_transform(self, bm):
        assert debt_time_laplace(bm, 1.0) == pytest.approx(2.0 / (1.0 + math.sqrt(3.0)), rel=1e-9)
        assert debt_time_laplace_numeric(bm, 1.0) == pytest.approx(debt_time_laplace(bm, 1.0), abs=5e-3)

    def test_normalization_and_cdf(self, bm):
        assert debt_time_normalization(bm) == pytest.approx(1.0, abs=5e-3)
        values = debt_time_cdf(bm, np.array([1e-5, 0.1, 1.0, 10.0]))
        assert np.all(np.diff(values) > 0)
        assert 0.0 < values[0] < values[-1] <= 1.0 + 5e-3

    def test_head_mass_matches_square_root_substitution(self, bm):
        """Test the closed-form mass below the grid against quadrature in u = √t."""
        exact, _ = integrate.quad(lambda u: 2.0 * u * debt_time_density(bm, u * u), 0.0, 1e-2)
        assert float(debt_time_cdf(bm, 1e-4)) == pytest.approx(exact, abs=1e-6)

    def test_negative_jumps_rejected(self):
        model = validate_model(LevyModel(-1.0, 1.0, (JumpSpec(1.0, 2.0, -1),)))
        with pytest.raises(SpectralConditionError):
            debt_time_density(model, 1.0)
        with pytest.raises(SpectralConditionError):
            debt_time_laplace(model, 1.0)


class TestChecks:
    """Test cases for the verdict rows."""

    def test_at_most(self):
        row = at_most("x", 0.1, 0.2, ess=50)
        assert row.passed
        assert row.to_dict() == {"test_id": "x", "statistic": 0.1, "threshold": 0.2,
                                 "ess": 50.0, "pass": True}
        assert not at_most("x", math.nan, 0.2).passed

    def test_at_least(self):
        assert at_least("ess", 6000.0, 5000.0, ess=6000.0).passed
        assert at_least("ess", 5000.0, 5000.0).passed
        assert not at_least("ess", 4999.0, 5000.0).passed
        assert not at_least("ess", math.nan, 5000.0).passed

    def test_close_to_and_within_se(self):
        assert close_to("c", 1.05, 1.0, 0.1).passed
        assert not within_se("z", 1.5, 1.0, 0.1, k=3).passed
        assert within_se("z", 1.0, 1.0, 0.0, k=3).passed
        assert within_se("z", 1.2, 1.0, 0.1, k=3).statistic == pytest.approx(2.0)

    def test_non_increasing(self):
        assert non_increasing("m", [3.0, 2.0, 2.05], slack=0.1).passed
        assert not non_increasing("m", [1.0, 2.0], slack=0.1).passed
        assert non_increasing("m", [1.0]).statistic == 0.0

    def test_binomial_z(self):
        assert binomial_z(50, 100, 0.5) == 0.0
        assert binomial_z(60, 100, 0.5) == pytest.approx(2.0)
        with pytest.raises(StatisticsError):
            binomial_z(1, 0, 0.5)
        with pytest.raises(StatisticsError):
            binomial_z(1, 10, 1.0)

    def test_mean_se(self):
        mean, se = mean_se([1.0, 3.0])
        assert mean == 2.0
        assert se == pytest.approx(1.0)
        weighted, _ = mean_se([1.0, 3.0], weights=[3.0, 1.0])
        assert weighted == pytest.approx(1.5)
        with pytest.raises(StatisticsError):
            mean_se([1.0])

    def test_bootstrap_se(self):
        rng = np.random.default_rng(3)
        se = bootstrap_se(rng.normal(size=400), np.mean, rng, resamples=200)
        assert se == pytest.approx(0.05, rel=0.3)
        with pytest.raises(StatisticsError):
            bootstrap_se([1.0, 2.0], np.mean, rng, resamples=1)
