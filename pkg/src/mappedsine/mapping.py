"""Arctan map between the real line and the computational interval (0, pi).

The physical coordinate ``x`` and the computational coordinate ``y`` are
related by ``y = pi/2 + arctan(x)``.  Every function returned here accepts
scalars or numpy arrays and returns the matching shape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainEndpointError, InvalidInputError

HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class MapPoint:
    """A point seen from both sides of the map."""

    x: float
    y: float

    @classmethod
    def from_physical(cls, x: float) -> "MapPoint":
        return cls(float(x), float(to_computational(x)))

    @classmethod
    def from_computational(cls, y: float) -> "MapPoint":
        return cls(float(to_physical(y)), float(y))


@dataclass(frozen=True)
class MetricTerms:
    """``inv_jac = 1/(dx/dy) = sin^2 y`` and its y-derivative ``sin 2y``."""

    inv_jac: np.ndarray | float
    inv_jac_deriv: np.ndarray | float


def _as_float(v, name):
    arr = np.asarray(v, dtype=float)
    if np.isnan(arr).any():
        raise InvalidInputError(f"{name} contains NaN")
    return arr


def _unwrap(arr):
    return arr.item() if arr.ndim == 0 else arr


def to_computational(x):
    """Map physical ``x`` to ``y = pi/2 + arctan(x)`` in (0, pi)."""
    x = _as_float(x, "x")
    if not np.isfinite(x).all():
        raise InvalidInputError("x must be finite")
    return _unwrap(HALF_PI + np.arctan(x))


def _check_closed_interval(y):
    y = _as_float(y, "y")
    if ((y < 0.0) | (y > np.pi)).any():
        raise InvalidInputError("y must lie in [0, pi]")
    return y


def to_physical(y):
    """Inverse map ``x = tan(y - pi/2)`` for ``0 < y < pi``.

    Evaluated as ``-cos(y) / sin(y)``, which keeps full relative accuracy
    next to the endpoints where ``tan`` of the shifted argument does not.

    Raises:
        DomainEndpointError: if any ``y`` equals 0 or pi.
        InvalidInputError: if any ``y`` lies outside [0, pi].
    """
    y = _check_closed_interval(y)
    if ((y == 0.0) | (y == np.pi)).any():
        raise DomainEndpointError("y = 0 and y = pi map to -inf and +inf")
    return _unwrap(-np.cos(y) / np.sin(y))


def metric_terms(y) -> MetricTerms:
    """Metric factors of the map at ``y`` in the closed interval [0, pi]."""
    y = _check_closed_interval(y)
    s = np.sin(y)
    # sin(pi) is 1.2e-16 in floating point; pin the endpoints to exact zeros
    endpoint = (y == 0.0) | (y == np.pi)
    inv_jac = np.where(endpoint, 0.0, s * s)
    inv_jac_deriv = np.where(endpoint, 0.0, 2.0 * s * np.cos(y))
    return MetricTerms(_unwrap(inv_jac), _unwrap(inv_jac_deriv))


def sine_basis(y, n_modes: int) -> np.ndarray:
    """Rows ``sin(m y)`` for ``m = 1..n_modes``; shape ``(n_modes, len(y))``."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    m = np.arange(1, n_modes + 1, dtype=float)
    return np.sin(np.outer(m, y))


def eval_expansion(coef, y):
    """Evaluate ``sum_m coef[m-1] sin(m y)`` at computational points ``y``."""
    coef = np.asarray(coef, dtype=float)
    if coef.ndim != 1 or coef.size == 0:
        raise InvalidInputError("expansion must be a nonempty 1D coefficient vector")
    y_arr = np.asarray(y, dtype=float)
    out = coef @ sine_basis(y_arr.ravel(), coef.size)
    return _unwrap(out.reshape(y_arr.shape))


def eval_expansion_physical(coef, x):
    """Evaluate a sine expansion at physical points ``x``.

    Computes ``sum_m c_m sin(m (pi/2 + arctan x))``.  The value tends to 0
    as ``|x|`` grows because every ``sin(m y)`` vanishes at 0 and pi.
    """
    return eval_expansion(coef, to_computational(x))
