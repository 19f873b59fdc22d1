"""Galerkin matrices of second-order operators in the mapped sine basis.

Entry ``(m, n)`` (1-based) is the moment against ``sin(m y)`` of the
operator applied to ``sin(n y)``.  Matrices are returned as
``scipy.sparse.csr_array`` with sorted indices, so the stored entries follow
a deterministic row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import sparse

from .exceptions import EvaluationError, InvalidInputError
from .projection import QuadratureRule, build_quadrature

Coefficient = Union[float, Callable[[np.ndarray], np.ndarray]]

# m - n offsets, and m + n sums, that can couple under the arctan map
_DIFFERENCES = (-4, -2, 0, 2, 4)
_SUMS = (2, 4)


def _check_size(n_modes):
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidInputError(f"basis size must be a positive integer, got {n_modes!r}")
    return int(n_modes)


def _support(n_modes):
    """Unique (m, n) pairs, 1-based, where the closed forms can be nonzero."""
    m = np.arange(1, n_modes + 1)
    rows, cols = [], []
    for d in _DIFFERENCES:
        rows.append(m)
        cols.append(m - d)
    for s in _SUMS:
        rows.append(m)
        cols.append(s - m)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    keep = (cols >= 1) & (cols <= n_modes)
    key = np.unique(rows[keep] * (n_modes + 1) + cols[keep])
    return key // (n_modes + 1), key % (n_modes + 1)


def _csr(m, n, values, n_modes):
    mat = sparse.coo_array((values, (m - 1, n - 1)), shape=(n_modes, n_modes)).tocsr()
    mat.eliminate_zeros()
    mat.sort_indices()
    return mat


def poisson_parts(n_modes: int) -> tuple[sparse.csr_array, sparse.csr_array]:
    """Closed-form ``(M2, M12)`` for ``d^2/dx^2`` under the arctan map.

    ``M2`` carries ``sin^4 y * d^2/dy^2`` and ``M12`` carries
    ``sin^2 y * sin 2y * d/dy``; both are built from Kronecker deltas only.
    """
    n_modes = _check_size(n_modes)
    m, n = _support(n_modes)
    d = m - n
    s = m + n

    def delta(a, b):
        return (a == b).astype(float)

    m12 = (n * np.pi / 16.0) * (
        -delta(d, 4) + delta(-d, 4) - delta(s, 4)
        + 2 * delta(d, 2) - 2 * delta(-d, 2) + 2 * delta(s, 2)
    )
    m2 = (-(n**2) * np.pi / 32.0) * (
        delta(d, 4) + delta(-d, 4) - delta(s, 4)
        - 4 * delta(d, 2) - 4 * delta(-d, 2) + 4 * delta(s, 2)
        + 6 * delta(d, 0)
    )
    return _csr(m, n, m2, n_modes), _csr(m, n, m12, n_modes)


def assemble_poisson_1d(n_modes: int) -> sparse.csr_array:
    """Galerkin matrix of ``u''`` (the 1D Laplacian, ``L2 = +1``)."""
    m2, m12 = poisson_parts(n_modes)
    return (m2 + m12).tocsr()


def assemble_helmholtz_1d(n_modes: int, gamma: float) -> sparse.csr_array:
    """Galerkin matrix of ``-u'' + gamma * u``.

    The mass term is ``gamma * (pi/2) * I`` by sine orthogonality.
    """
    n_modes = _check_size(n_modes)
    lap = assemble_poisson_1d(n_modes)
    mass = sparse.eye_array(n_modes, format="csr") * (float(gamma) * 0.5 * np.pi)
    out = (mass - lap).tocsr()
    out.eliminate_zeros()
    out.sort_indices()
    return out


@dataclass(frozen=True)
class OperatorSpec:
    """``L2(y) u_xx + L1(y) u_x + (L0(y) + gamma) u`` after the map.

    Each coefficient is a constant or a vectorised callable of ``y``.
    ``gamma`` is added to ``L0``; it is a shortcut for screened problems.
    """

    L2: Coefficient = 0.0
    L1: Coefficient = 0.0
    L0: Coefficient = 0.0
    gamma: float = 0.0


def _coefficient_values(coef, nodes, name):
    values = coef(nodes) if callable(coef) else coef
    values = np.broadcast_to(np.asarray(values, dtype=float), nodes.shape)
    bad = ~np.isfinite(values)
    if bad.any():
        y_bad = float(nodes[np.argmax(bad)])
        raise EvaluationError(f"{name} is not finite at y = {y_bad!r}", location=y_bad)
    return values


def assemble_general_1d(
    spec: OperatorSpec, n_modes: int, rule: QuadratureRule | None = None
) -> sparse.csr_array:
    """Assemble ``M2 + M12 + M1 + M0`` for ``spec`` entirely by quadrature.

    The result is dense in general; it is still returned in CSR form so every
    assembly path hands back the same type.  The default rule has
    ``max(128, 4 * n_modes)`` nodes, enough for the ``sin^4 y`` weights.
    """
    n_modes = _check_size(n_modes)
    if rule is None:
        rule = build_quadrature(max(128, 4 * n_modes))
    if len(rule) < 2 * n_modes:
        raise InvalidInputError(
            f"quadrature with {len(rule)} nodes cannot resolve {n_modes} modes"
        )
    y, w = rule.nodes, rule.weights
    L2 = _coefficient_values(spec.L2, y, "L2")
    L1 = _coefficient_values(spec.L1, y, "L1")
    L0 = _coefficient_values(spec.L0, y, "L0") + spec.gamma

    k = np.arange(1, n_modes + 1, dtype=float)
    S = np.sin(np.outer(k, y))
    C = np.cos(np.outer(k, y))
    s2 = np.sin(y) ** 2
    test = S * w  # sin(m y) times the weights, one row per test mode

    second = test @ ((L2 * s2 * s2) * S).T * -(k**2)
    first = test @ ((L2 * s2 * np.sin(2.0 * y) + L1 * s2) * C).T * k
    zeroth = test @ (L0 * S).T
    return sparse.csr_array(second + first + zeroth)
