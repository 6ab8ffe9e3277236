"""Exception hierarchy shared by every module."""


class JuntaLabError(Exception):
    """Base class for library errors."""


class ParameterError(JuntaLabError, ValueError):
    """Invalid argument: bad subset, violated gap condition, mismatched sizes."""


class CapacityError(JuntaLabError):
    """Input exceeds the desk-scale limits of a dense routine."""


class BudgetExceededError(CapacityError):
    """Projected query cost is above the configured ceiling.

    ``estimate`` carries the cost breakdown that triggered the abort.
    """

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


class GenerationError(JuntaLabError):
    """An instance generator could not produce a certified instance."""
