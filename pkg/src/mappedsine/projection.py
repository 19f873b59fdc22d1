"""Sine moments of forcing functions, by Gauss-Legendre quadrature on (0, pi)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

import numpy as np

from .exceptions import EvaluationError, InvalidInputError
from .mapping import sine_basis, to_physical

MIN_QUADRATURE_POINTS = 8


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes strictly inside (0, pi) with positive weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return self.nodes.size

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def build_quadrature(n_points: int) -> QuadratureRule:
    """Gauss-Legendre rule mapped affinely from [-1, 1] onto (0, pi).

    Exact for polynomials of degree ``2 * n_points - 1``.  Rules are cached
    and their arrays are read-only.
    """
    if int(n_points) != n_points or n_points < MIN_QUADRATURE_POINTS:
        raise InvalidInputError(
            f"n_points must be an integer >= {MIN_QUADRATURE_POINTS}, got {n_points!r}"
        )
    return _gauss_legendre(int(n_points))


@lru_cache(maxsize=32)
def _gauss_legendre(n_points):
    t, w = np.polynomial.legendre.leggauss(n_points)
    half = 0.5 * np.pi
    nodes = half * (t + 1.0)
    weights = half * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights)


def composite_quadrature(panels: int, order: int = 32) -> QuadratureRule:
    """Gauss-Legendre rule of ``order`` nodes on each of ``panels`` equal panels.

    Very high-order single rules lose node accuracy (around 1e-13 at a few
    thousand nodes); panels of a modest order keep every node and weight at
    machine precision.
    """
    if int(panels) != panels or panels < 1:
        raise InvalidInputError(f"panels must be a positive integer, got {panels!r}")
    return _composite(int(panels), int(order))


@lru_cache(maxsize=32)
def _composite(panels, order):
    base = build_quadrature(order)
    width = np.pi / panels
    offsets = width * np.arange(panels)
    scale = width / np.pi
    nodes = (offsets[:, None] + scale * base.nodes[None, :]).ravel()
    weights = np.tile(scale * base.weights, panels)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights)


def default_rule(n_modes: int) -> QuadratureRule:
    """Smallest rule the package uses for ``n_modes`` modes: ``max(64, 2N)`` nodes."""
    return build_quadrature(max(64, 2 * n_modes))


def _evaluate(f, rule: QuadratureRule, physical: bool) -> np.ndarray:
    pts = to_physical(rule.nodes) if physical else rule.nodes
    values = np.broadcast_to(np.asarray(f(pts), dtype=float), rule.nodes.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        y_bad = float(rule.nodes[np.argmax(bad)])
        raise EvaluationError(f"function is not finite at y = {y_bad!r}", location=y_bad)
    return values


def project_1d(
    f: Callable[[np.ndarray], np.ndarray],
    rule: QuadratureRule | None,
    n_modes: int,
    *,
    physical: bool = False,
) -> np.ndarray:
    """Moments ``f_m = int_0^pi sin(m y) f(y) dy`` for ``m = 1..n_modes``.

    ``f`` is called once with the array of quadrature nodes.  With
    ``physical=True`` it is called with the mapped points ``x = tan(y - pi/2)``
    instead, so forcings can be written in physical space.

    Raises:
        InvalidInputError: if the rule has fewer than ``2 * n_modes`` nodes.
        EvaluationError: if ``f`` is not finite at some node.
    """
    if n_modes < 1:
        raise InvalidInputError("n_modes must be >= 1")
    if rule is None:
        rule = default_rule(n_modes)
    if len(rule) < 2 * n_modes:
        raise InvalidInputError(
            f"quadrature with {len(rule)} nodes cannot resolve {n_modes} modes"
        )
    values = _evaluate(f, rule, physical)
    return sine_basis(rule.nodes, n_modes) @ (rule.weights * values)


def project_3d_separable(fx, fy, fz, rule, n_modes, *, physical=False) -> np.ndarray:
    """Moment tensor of ``fx(y1) * fy(y2) * fz(y3)``; shape ``(N, N, N)``."""
    a = project_1d(fx, rule, n_modes, physical=physical)
    b = project_1d(fy, rule, n_modes, physical=physical)
    c = project_1d(fz, rule, n_modes, physical=physical)
    return np.einsum("i,j,k->ijk", a, b, c)


def moments_to_coefficients(moments) -> np.ndarray:
    """Expansion coefficients of a function from its own sine moments.

    Uses ``int_0^pi sin^2(m y) dy = pi/2``, so ``c_m = (2/pi) f_m``.  Do not
    apply this to the right-hand side of a Galerkin system; the solvers
    consume raw moments.
    """
    return (2.0 / np.pi) * np.asarray(moments, dtype=float)


Symmetry = Literal["symmetric", "antisymmetric"]


def parity_mask(n_modes: int, symmetry: Symmetry) -> np.ndarray:
    """Boolean mask of the modes allowed by a symmetry about ``y = pi/2``.

    ``sin(m (pi - y)) = (-1)**(m+1) sin(m y)``, so a function symmetric about
    pi/2 (even in x) carries only odd ``m``, and an antisymmetric one (odd in
    x) only even ``m``.
    """
    m = np.arange(1, n_modes + 1)
    if symmetry == "symmetric":
        return m % 2 == 1
    if symmetry == "antisymmetric":
        return m % 2 == 0
    raise InvalidInputError(f"unknown symmetry {symmetry!r}")


def parity_restrict(values, symmetry: Symmetry) -> np.ndarray:
    """Zero the entries a symmetry about ``y = pi/2`` forbids."""
    values = np.asarray(values, dtype=float)
    return np.where(parity_mask(values.size, symmetry), values, 0.0)
