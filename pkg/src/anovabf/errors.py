"""Exception types shared across the package."""


class AnovaBFError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AnovaBFError):
    """CSV input could not be parsed into a dataset."""


class BalanceError(AnovaBFError):
    """Observations do not form a balanced design."""


class DegenerateDesignError(AnovaBFError):
    """Design too small for the Bayes factors (fewer than 2 levels or 2 replications)."""


class DegenerateDataError(AnovaBFError):
    """All observations identical: total sum of squares is zero."""


class DomainError(AnovaBFError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(AnovaBFError):
    """Numerical integration failed to converge within its budget.

    The best available estimate is attached as ``estimate``.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate
