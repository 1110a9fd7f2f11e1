"""Lévy model family, Cramér root and Esscher tilting."""

from .cramer import (
    CramerConstants,
    check_assumptions,
    cramer_exponent,
    dual_model,
    esscher_tilt,
    phi_exponent,
    validate_model,
)
from .exceptions import (
    CramerRootError,
    DomainError,
    DriftError,
    ModelError,
    MomentConditionError,
    RegularityError,
    SpectralConditionError,
)
from .levy_model import JumpSpec, LevyModel, cumulant

__all__ = [
    "CramerConstants",
    "CramerRootError",
    "DomainError",
    "DriftError",
    "JumpSpec",
    "LevyModel",
    "ModelError",
    "MomentConditionError",
    "RegularityError",
    "SpectralConditionError",
    "check_assumptions",
    "cramer_exponent",
    "cumulant",
    "dual_model",
    "esscher_tilt",
    "phi_exponent",
    "validate_model",
]
