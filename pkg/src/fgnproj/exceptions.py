"""Exception and warning types raised by fgnproj."""
import numpy as np


class FGNError(Exception):
    """Base class for numerical failures in this package."""


class DomainError(FGNError, ValueError):
    """Argument outside the domain of the requested operation."""


class NotPositiveDefinite(FGNError, np.linalg.LinAlgError):
    """Cholesky factorization broke down.

    Attributes
    ----------
    pivot : int
        1-based index of the first non-positive pivot.
    """

    def __init__(self, pivot, value=None):
        self.pivot = int(pivot)
        self.value = value
        msg = f"matrix is not positive definite: pivot {self.pivot}"
        if value is not None:
            msg += f" has value {value:.3e}"
        super().__init__(msg)


class DegenerateDenominator(FGNError):
    """A denominator that is positive in exact arithmetic fell below threshold."""

    def __init__(self, where, index, value):
        self.where = where
        self.index = int(index)
        self.value = float(value)
        super().__init__(f"{where}: denominator {value:.3e} at step {index}")


class NoSignChange(FGNError):
    """Root bracket endpoints have the same sign."""


class IllConditioned(FGNError):
    """Requested evaluation lies beyond the supported conditioning cap."""


class CrossCheckError(FGNError, AssertionError):
    """Two formulations of the same closed form disagree."""


class IllConditionedWarning(UserWarning):
    """Condition estimate of a linear system exceeds the warning threshold."""
