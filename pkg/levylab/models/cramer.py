"""Cramér root, Esscher tilt, dual model and the first-passage exponent Φ."""

import math
from dataclasses import dataclass
from typing import Any, Callable, List, Mapping, Union

import numpy as np
from scipy import optimize

from ..utils.exceptions import ValidationError
from .exceptions import (
    CramerRootError,
    DriftError,
    ModelError,
    MomentConditionError,
    RegularityError,
    SpectralConditionError,
)
from .levy_model import JumpSpec, LevyModel

ROOT_RTOL = 1e-12
_MAX_DOUBLINGS = 200
_MAX_POLE_HALVINGS = 60

ModelParams = Union[LevyModel, Mapping[str, Any]]


@dataclass(frozen=True)
class CramerConstants:
    """Estimated normalizer c(θ) and Cramér constant C.

    Attributes:
        c_theta: Normalizer turning the e^{−θ·overshoot} tilt of ρ̃ into ρ
        C: Limit of e^{−θx}P_x(sup ξ > 0) as x → −∞
        c_theta_se: Bootstrap standard error of ``c_theta``
        C_se: Bootstrap standard error of ``C``
        product_se: Bootstrap standard error of ``c_theta * C``
    """
    c_theta: float
    C: float
    c_theta_se: float = 0.0
    C_se: float = 0.0
    product_se: float = 0.0

    @property
    def product(self) -> float:
        return self.c_theta * self.C


def _upper_bracket(f: Callable[[float], float], start: float, upper_pole: float,
                   target: float = 0.0) -> float:
    """Smallest probe point above ``start`` where f exceeds ``target``."""
    if math.isfinite(upper_pole):
        for k in range(1, _MAX_POLE_HALVINGS + 1):
            b = upper_pole - (upper_pole - start) * 2.0 ** -k
            if b > start and f(b) > target:
                return b
        raise CramerRootError(
            f"no root of Eq. (2) before the pole at s={upper_pole:g}")
    b = max(1.0, 2.0 * abs(start))
    for _ in range(_MAX_DOUBLINGS):
        if f(b) > target:
            return b
        b *= 2.0
    raise CramerRootError("no root of Eq. (2): cumulant stays bounded")


def _argmin(model: LevyModel, lo: float, hi: float) -> float:
    """Minimizer of the convex cumulant on (lo, hi), where ψ′(lo) < 0 < ψ′(hi)."""
    return optimize.brentq(model.cumulant_derivative, lo, hi,
                           xtol=1e-300, rtol=4 * np.finfo(float).eps)


def _polish(f: Callable[[float], float], df: Callable[[float], float], x: float,
            lo: float, hi: float, steps: int = 4) -> float:
    """Newton polishing that never leaves the bracket."""
    for _ in range(steps):
        slope = df(x)
        if slope == 0:
            break
        candidate = x - f(x) / slope
        if not lo <= candidate <= hi or candidate == x:
            break
        x = candidate
    return x


def _largest_root(model: LevyModel, level: float) -> float:
    """Largest s with ψ(s) = level, for level ≥ min ψ on the positive side."""
    _, upper = model.domain
    f = lambda s: model.cumulant(s) - level  # noqa: E731
    b = _upper_bracket(lambda s: model.cumulant(s), 0.0, upper, target=level)
    if model.cumulant_derivative(0.0) < 0:
        a = _argmin(model, 0.0, b)
    else:
        a = 0.0
    if f(a) >= 0:
        if level == 0 and a == 0.0:
            raise CramerRootError("no positive root of Eq. (2): the cumulant is not negative near 0")
        return a
    root = optimize.brentq(f, a, b, xtol=1e-300, rtol=4 * np.finfo(float).eps)
    return _polish(f, model.cumulant_derivative, root, a, b)


def cramer_exponent(model: LevyModel) -> float:
    """Unique positive root θ of the cumulant.

    Args:
        model: Model with negative mean

    Returns:
        θ to relative tolerance 1e−12

    Raises:
        DriftError: If the mean is nonnegative
        CramerRootError: If no root lies before the first pole
    """
    if model.mean >= 0:
        raise DriftError(_drift_message(model))
    theta = _largest_root(model, 0.0)
    if not theta > 0:
        raise CramerRootError(f"no positive root of Eq. (2), got θ={theta:g}")
    return float(theta)


def phi_exponent(dual: LevyModel, a: float) -> float:
    """Φ(a): the largest root of ψ′(s) = a, ψ′ being the cumulant of the dual.

    Φ(0) = θ and E′(exp(−aσ)) = θ/Φ(a).

    Raises:
        SpectralConditionError: If the dual has positive jumps
        ValidationError: If a is negative
    """
    if dual.has_positive_jumps:
        raise SpectralConditionError(
            "phi_exponent needs a spectrally negative dual (no positive jumps)")
    if not math.isfinite(a) or a < 0:
        raise ValidationError(f"a must be a nonnegative real, got {a}")
    return float(_largest_root(dual, float(a)))


def _drift_message(model: LevyModel) -> str:
    mean = model.mean
    if mean == 0:
        return "oscillates (mean 0), Eq. (2) has no root θ>0"
    lower, _ = model.domain
    try:
        f = model.cumulant
        a = lower / 2.0 if math.isfinite(lower) else -1.0
        while f(a) <= 0 and math.isfinite(lower) and a - lower > 1e-12:
            a = (a + lower) / 2.0
        k = 0
        while f(a) <= 0 and not math.isfinite(lower) and k < _MAX_DOUBLINGS:
            a *= 2.0
            k += 1
        s_min = optimize.brentq(model.cumulant_derivative, a, 0.0)
        root = optimize.brentq(f, a, s_min)
        return f"drifts to +∞, Eq. (2) root at θ={root:g}<0 invalid"
    except (ValueError, ModelError):
        return f"drifts to +∞ (mean {mean:g}), Eq. (2) has no root θ>0"


def check_assumptions(params: ModelParams) -> List[ModelError]:
    """Every standing assumption the model violates, one error per violation.

    Args:
        params: Model or JSON description

    Returns:
        Possibly empty list of errors
    """
    model = params if isinstance(params, LevyModel) else LevyModel.from_dict(params)
    errors: List[ModelError] = []

    if not model.sigma > 0:
        errors.append(RegularityError(f"sigma={model.sigma:g} violates regularity (Eq. 1)"))

    if model.mean >= 0:
        errors.append(DriftError(_drift_message(model)))
        return errors

    try:
        theta = cramer_exponent(model)
    except ModelError as e:
        errors.append(e)
        return errors

    _, upper = model.domain
    if not theta < upper:
        errors.append(MomentConditionError(
            f"θ={theta:g} is not inside the jump-transform domain (beta={upper:g}), "
            f"Eq. (3) fails"))
    elif not model.cumulant_derivative(theta) > 0:
        errors.append(CramerRootError(f"tilted mean at θ={theta:g} is not positive"))
    return errors


def validate_model(params: ModelParams) -> LevyModel:
    """Check the standing assumptions and return the fully derived model.

    Use :func:`check_assumptions` to obtain every violation at once.

    Raises:
        ModelError: The first violated assumption
    """
    model = params if isinstance(params, LevyModel) else LevyModel.from_dict(params)
    if model.is_validated:
        return model
    errors = check_assumptions(model)
    if errors:
        raise errors[0]
    theta = cramer_exponent(model)
    return model.with_derived(theta, float(model.cumulant_derivative(theta)))


def esscher_tilt(model: LevyModel) -> LevyModel:
    """Law of ξ under the tilted measure P̃ (ψ̃(s) = ψ(s + θ)).

    The result drifts to +∞ and carries no Cramér root.
    """
    model = validate_model(model)
    theta = model.theta
    assert theta is not None
    jumps = tuple(
        JumpSpec(j.rate * j.beta / (j.beta - j.sign * theta), j.beta - j.sign * theta, j.sign)
        for j in model.active_jumps
    )
    return LevyModel(drift=model.drift + model.sigma ** 2 * theta, sigma=model.sigma, jumps=jumps)


def dual_model(model: LevyModel) -> LevyModel:
    """Law P′ of −ξ under P̃; it satisfies Cramér's condition with the same θ."""
    return validate_model(esscher_tilt(model).negated())
