"""Custom exceptions for levylab."""


class LevyLabError(Exception):
    """Base exception for levylab."""
    pass


class ValidationError(LevyLabError):
    """Validation error."""
    pass


class ConfigurationError(LevyLabError):
    """Configuration error."""
    pass


class SimulationError(LevyLabError):
    """Path simulation error."""
    pass


class HorizonExhaustedError(SimulationError):
    """A stop condition was requested but not met before the time cap."""
    pass


class RejectionBudgetError(SimulationError):
    """A rejection sampler used up its attempt budget."""
    pass


class PathError(LevyLabError):
    """Path manipulation error."""
    pass


class PivotError(PathError):
    """Pivot or shift time lies outside the life-interval."""
    pass


class DeadValueError(PathError):
    """Arithmetic was attempted with the dead (cemetery) value."""
    pass


class LampertiError(LevyLabError):
    """Lamperti time change could not be built."""
    pass


class StatisticsError(LevyLabError):
    """Statistics error."""
    pass


class DegenerateSampleError(StatisticsError):
    """Sample has too little information for the requested statistic."""
    pass


class InsufficientExceedancesError(StatisticsError):
    """Too few observations above the tail threshold."""
    pass


class ExperimentError(LevyLabError):
    """Experiment execution error."""
    pass


class ReportError(LevyLabError):
    """Report writing error."""
    pass
