"""Exception hierarchy shared by all modules."""


class BallDesignError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(BallDesignError, ValueError):
    """Invalid user input: unknown model, bad dimension, singular region, ..."""


class NumericDomainError(BallDesignError, ArithmeticError):
    """An intensity or residual evaluated to a non-finite value."""


class ContractViolation(BallDesignError, ValueError):
    """A precondition of an operation was not met by the caller."""


class SolverFailure(BallDesignError, RuntimeError):
    """A root finder or Newton iteration did not produce a solution.

    Parameters
    ----------
    message : str
        Human readable diagnostic.
    bracket : tuple, optional
        Bracket endpoints and residual values when a scalar search failed.
    candidate : object, optional
        Best candidate found before giving up (e.g. a grid maximizer).
    """

    def __init__(self, message, bracket=None, candidate=None):
        super().__init__(message)
        self.bracket = bracket
        self.candidate = candidate


class BoundaryFailure(SolverFailure):
    """No interior solution exists; the caller should fall back to a pole design."""
