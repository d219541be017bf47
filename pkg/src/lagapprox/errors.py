"""Exception hierarchy shared by all modules."""


class LaguerreError(Exception):
    """Base class for every error raised by :mod:`lagapprox`."""


class ParameterError(LaguerreError, ValueError):
    """An argument is outside its admissible range (e.g. ``alpha <= -1``)."""


class DomainError(LaguerreError, ValueError):
    """A point or contour violates an analyticity / domain requirement."""


class EvaluationError(LaguerreError, ArithmeticError):
    """A sampled function or intermediate result is not finite."""


class ConvergenceError(LaguerreError, RuntimeError):
    """An iterative construction did not converge."""


class FitError(LaguerreError, ValueError):
    """Not enough usable data points for a rate fit."""


class LookupFailure(LaguerreError, KeyError):
    """Unknown registry name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class NoPrediction(LaguerreError, ValueError):
    """No finite-rho rate prediction exists (e.g. for entire functions)."""
