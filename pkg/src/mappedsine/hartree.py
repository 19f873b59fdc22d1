"""Hartree energy from sine-expansion coefficients, with no extra integrals.

Under the arctan map ``dx = dy / sin^2 y``, so the infinite-domain integral
of a product of two expansions reduces to the overlap matrix

    E[i, j] = int_0^pi sin(i y) sin(j y) / sin^2(y) dy = pi * min(i, j)

for ``i + j`` even and zero otherwise.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidInputError

_AXES = (0, 1, 2)


def build_overlap_matrix(n_modes: int) -> np.ndarray:
    """Closed-form overlap matrix ``E`` of size ``n_modes``."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidInputError("n_modes must be a positive integer")
    i = np.arange(1, int(n_modes) + 1)
    I, J = np.meshgrid(i, i, indexing="ij")
    return np.where((I + J) % 2 == 0, np.pi * np.minimum(I, J), 0.0)


def _contract(E, t, axis):
    return np.moveaxis(np.tensordot(E, t, axes=(1, axis)), 0, axis)


def hartree_energy(c, f, kappa: float = 1.0, order=_AXES) -> float:
    """``kappa * c^T (E (x) E (x) E) f`` by three mode contractions.

    ``order`` fixes which axis of ``f`` is contracted first; the result does
    not depend on it beyond rounding.
    """
    c = np.asarray(c, dtype=float)
    f = np.asarray(f, dtype=float)
    if c.ndim != 3 or c.shape != f.shape or len(set(c.shape)) != 1:
        raise InvalidInputError(f"need matching cubic tensors, got {c.shape} and {f.shape}")
    if sorted(order) != list(_AXES):
        raise InvalidInputError(f"order must be a permutation of {_AXES}")
    if not np.isfinite(kappa):
        raise InvalidInputError("kappa must be finite")
    E = build_overlap_matrix(c.shape[0])
    t = f
    for axis in order:
        t = _contract(E, t, axis)
    return float(kappa * np.vdot(c, t))
