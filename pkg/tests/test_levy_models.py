"""Tests for the Lévy model family and the Cramér root."""

import math

import numpy as np
import pytest

from levylab.models import (
    CramerRootError,
    DomainError,
    DriftError,
    JumpSpec,
    LevyModel,
    ModelError,
    RegularityError,
    SpectralConditionError,
    check_assumptions,
    cramer_exponent,
    cumulant,
    dual_model,
    esscher_tilt,
    phi_exponent,
    validate_model,
)
from levylab.utils.exceptions import ValidationError


class TestCumulant:
    """Test cases for the cumulant exponent."""

    def test_zero_at_origin(self, bm, jd1):
        assert cumulant(bm, 0.0) == 0.0
        assert cumulant(jd1, 0.0) == 0.0

    def test_brownian_closed_form(self, bm):
        assert cumulant(bm, 1.0) == pytest.approx(-0.5, abs=1e-12)

    def test_jump_diffusion_root(self, jd1):
        assert cumulant(jd1, 2.0) == pytest.approx(0.0, abs=1e-12)

    def test_vectorized(self, bm):
        s = np.array([0.0, 1.0, 2.0])
        np.testing.assert_allclose(cumulant(bm, s), [0.0, -0.5, 0.0], atol=1e-12)

    def test_pole_raises_domain_error(self, jd1):
        with pytest.raises(DomainError):
            cumulant(jd1, 3.0)

    def test_convexity(self, jd1):
        rng = np.random.default_rng(3)
        s1, s2 = rng.uniform(-5.0, 2.9, 200), rng.uniform(-5.0, 2.9, 200)
        mid = cumulant(jd1, 0.5 * (s1 + s2))
        assert np.all(mid <= 0.5 * (cumulant(jd1, s1) + cumulant(jd1, s2)) + 1e-12)

    def test_derivative_matches_finite_difference(self, jd1):
        h = 1e-6
        for s in (-1.0, 0.5, 2.0):
            fd = (cumulant(jd1, s + h) - cumulant(jd1, s - h)) / (2 * h)
            assert jd1.cumulant_derivative(s) == pytest.approx(fd, rel=1e-6)


class TestCramerExponent:
    """Test cases for θ."""

    @pytest.mark.parametrize("drift,theta", [(-1.0, 2.0), (-0.5, 1.0), (-0.25, 0.5)])
    def test_brownian(self, drift, theta):
        assert cramer_exponent(LevyModel.brownian(drift, 1.0)) == pytest.approx(theta, rel=1e-12)

    def test_jump_diffusion(self, jd1):
        assert jd1.theta == pytest.approx(2.0, rel=1e-12)

    def test_tilted_mean(self, bm, jd1):
        assert bm.tilted_mean == pytest.approx(1.0, rel=1e-12)
        assert jd1.tilted_mean == pytest.approx(3.0, rel=1e-12)

    def test_positive_mean_raises(self):
        with pytest.raises(DriftError):
            cramer_exponent(LevyModel.brownian(1.0, 1.0))


class TestValidation:
    """Test cases for the standing assumptions."""

    def test_drift_error_names_equation(self):
        with pytest.raises(DriftError, match=r"Eq\. \(2\)"):
            validate_model(LevyModel.brownian(1.0, 1.0))

    def test_regularity_error(self):
        with pytest.raises(RegularityError, match=r"Eq\. 1"):
            validate_model(LevyModel.brownian(-1.0, 0.0))

    def test_model_errors_are_validation_errors(self):
        assert issubclass(ModelError, ValidationError)
        assert issubclass(CramerRootError, ModelError)

    def test_every_violation_reported(self):
        errors = check_assumptions(LevyModel.brownian(1.0, 0.0))
        assert {type(e) for e in errors} == {RegularityError, DriftError}

    def test_valid_model_has_no_violations(self, jd1):
        assert check_assumptions(jd1) == []

    def test_from_dict(self):
        model = validate_model({'drift': -2.0, 'sigma': 1.0,
                                'jumps': [{'rate': 1.0, 'beta': 3.0, 'sign': 1}]})
        assert model.theta == pytest.approx(2.0)
        assert model.has_positive_jumps and not model.has_negative_jumps

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError, match="unknown keys"):
            LevyModel.from_dict({'drift': -1.0, 'sigma': 1.0, 'theta': 2.0})

    def test_bad_jump_sign_rejected(self):
        with pytest.raises(ValidationError, match=r"jumps\[0\]\.sign"):
            LevyModel.from_dict({'drift': -1.0, 'sigma': 1.0,
                                 'jumps': [{'rate': 1.0, 'beta': 3.0, 'sign': 2}]})

    def test_zero_rate_means_no_jumps(self):
        model = validate_model(LevyModel(-1.0, 1.0, (JumpSpec(0.0, 1.0, 1),)))
        assert model.active_jumps == ()
        assert model.theta == pytest.approx(2.0)

    def test_from_json_string(self):
        model = LevyModel.from_json('{"drift": -1, "sigma": 1}')
        assert model.to_dict() == {'drift': -1.0, 'sigma': 1.0, 'jumps': []}

    def test_reserve_constructor(self):
        model = LevyModel.from_reserve(premium=2.0, sigma=1.0, claim_rate=1.0, claim_mean=1.0 / 3.0)
        assert validate_model(model).theta == pytest.approx(2.0)


class TestTiltAndDual:
    """Test cases for the Esscher tilt, the dual model and Φ."""

    def test_tilt_brownian(self, bm):
        tilted = esscher_tilt(bm)
        assert tilted.drift == pytest.approx(1.0)
        assert tilted.sigma == 1.0

    def test_tilt_jump_diffusion(self, jd1):
        tilted = esscher_tilt(jd1)
        assert tilted.drift == pytest.approx(0.0, abs=1e-12)
        (jump,) = tilted.jumps
        assert (jump.rate, jump.beta, jump.sign) == (pytest.approx(3.0), pytest.approx(1.0), 1)

    def test_tilted_cumulant_at_minus_theta(self, jd1):
        assert cumulant(esscher_tilt(jd1), -jd1.theta) == pytest.approx(0.0, abs=1e-12)

    def test_brownian_is_self_dual(self, bm):
        dual = dual_model(bm)
        assert (dual.drift, dual.sigma) == (pytest.approx(-1.0), 1.0)

    def test_dual_jump_diffusion(self, jd1):
        dual = dual_model(jd1)
        (jump,) = dual.jumps
        assert dual.drift == pytest.approx(0.0, abs=1e-12)
        assert (jump.rate, jump.beta, jump.sign) == (pytest.approx(3.0), pytest.approx(1.0), -1)

    def test_dual_keeps_theta(self, bm, jd1):
        assert dual_model(bm).theta == pytest.approx(2.0)
        assert dual_model(jd1).theta == pytest.approx(2.0)

    def test_phi_at_zero_is_theta(self, bm):
        assert phi_exponent(dual_model(bm), 0.0) == pytest.approx(2.0, rel=1e-10)

    def test_phi_brownian(self, bm):
        phi = phi_exponent(dual_model(bm), 1.0)
        assert phi == pytest.approx(1.0 + math.sqrt(3.0), rel=1e-10)
        assert bm.theta / phi == pytest.approx(0.732051, abs=1e-6)

    def test_phi_needs_spectrally_negative_dual(self, jd1):
        with pytest.raises(SpectralConditionError):
            phi_exponent(jd1, 1.0)

    def test_phi_rejects_negative_argument(self, bm):
        with pytest.raises(ValidationError):
            phi_exponent(dual_model(bm), -1.0)
