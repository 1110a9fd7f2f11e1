"""Model-specific exceptions for levylab."""

from ..utils.exceptions import ValidationError


class ModelError(ValidationError):
    """A Lévy model violates one of the standing assumptions."""

    assumption = "model"


class RegularityError(ModelError):
    """No Brownian part: 0 is not regular for both half-lines."""

    assumption = "Eq. (1)"


class DriftError(ModelError):
    """The process does not drift to minus infinity."""

    assumption = "Eq. (2)"


class CramerRootError(ModelError):
    """The cumulant has no positive root before its first pole."""

    assumption = "Eq. (2)"


class MomentConditionError(ModelError):
    """The exponential moment at the Cramér root is infinite."""

    assumption = "Eq. (3)"


class DomainError(ModelError):
    """The cumulant was evaluated at or beyond a pole."""


class SpectralConditionError(ModelError):
    """The model has jumps of the forbidden sign."""
