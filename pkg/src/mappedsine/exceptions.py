"""Exception types raised by mappedsine."""

import numpy as np


class InvalidInputError(ValueError):
    """An argument is outside the domain an operation accepts."""


class DomainEndpointError(InvalidInputError):
    """A computational coordinate sits on 0 or pi, which maps to -inf/+inf."""


class EvaluationError(ArithmeticError):
    """A user-supplied function returned a non-finite value.

    Attributes:
        location: the computational coordinate where evaluation failed.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class SingularSystemError(np.linalg.LinAlgError):
    """The Galerkin matrix is numerically singular.

    Attributes:
        condition: estimated 1-norm condition number (may be ``inf``).
    """

    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition
