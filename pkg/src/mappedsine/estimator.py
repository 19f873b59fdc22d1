"""scikit-learn style wrappers around the Galerkin solvers.

The estimators take their problem parameters in ``__init__`` (so
``get_params``/``set_params``/``clone`` work), are ``fit`` to a forcing,
and ``predict`` the solution at physical points.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .bench import HARTREE_KAPPA, KRON_RHS_SCALE, screened_generator
from .hartree import hartree_energy
from .mapping import eval_expansion_physical, sine_basis, to_computational
from .operators import assemble_helmholtz_1d
from .projection import composite_quadrature, parity_mask, project_1d
from .solvers import solve_1d, solve_3d


class ScreenedPoisson1D(BaseEstimator):
    """Solve ``-u'' + gamma u = f`` on the real line with ``n_modes`` sine modes.

    Parameters
    ----------
    n_modes : int
        Number of basis functions ``sin(m y)``, ``m = 1..n_modes``.
    gamma : float
        Screening constant; must keep the Galerkin matrix nonsingular.
    parity : {"full", "symmetric", "antisymmetric"}
        Restrict the unknowns to the modes allowed by the solution's
        symmetry about ``y = pi/2`` (even or odd in ``x``).
    panels : int
        Panels of the composite 32-point quadrature used for the forcing.

    Attributes
    ----------
    coef_ : ndarray of shape (n_modes,)
        Expansion coefficients of the solution.
    moments_ : ndarray of shape (n_modes,)
        Sine moments of the forcing.
    """

    def __init__(self, n_modes=32, gamma=2.0, parity="full", panels=64):
        self.n_modes = n_modes
        self.gamma = gamma
        self.parity = parity
        self.panels = panels

    def fit(self, forcing, y=None):
        """Project ``forcing(x)`` (a vectorised callable) and solve."""
        if not callable(forcing):
            raise TypeError("forcing must be a callable of the physical coordinate")
        n = int(self.n_modes)
        rule = composite_quadrature(max(int(self.panels), n // 2), 32)
        f = project_1d(forcing, rule, n, physical=True)
        M = assemble_helmholtz_1d(n, self.gamma).toarray()
        coef = np.zeros(n)
        if self.parity == "full":
            coef = solve_1d(M, f)
        else:
            keep = parity_mask(n, self.parity)
            coef[keep] = solve_1d(M[np.ix_(keep, keep)], f[keep])
        self.moments_ = f
        self.coef_ = coef
        return self

    def predict(self, X):
        """Solution values at physical points ``X`` of shape (n_samples,) or (n_samples, 1)."""
        check_is_fitted(self, "coef_")
        X = check_array(X, ensure_2d=False)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected a single feature, got {X.shape[1]}")
            X = X[:, 0]
        return np.asarray(eval_expansion_physical(self.coef_, X))


class HartreeSolver3D(BaseEstimator):
    """Potential and Hartree energy of a separable charge density.

    ``fit`` takes a list of ``(weight, fx, fy, fz)`` terms, each a product of
    vectorised 1D callables of the physical coordinate; the density is their
    weighted sum.  The potential solves ``-lap V + ksq V = 4 pi rho``.

    Attributes
    ----------
    coef_ : ndarray of shape (n_modes, n_modes, n_modes)
    density_moments_ : ndarray of shape (n_modes, n_modes, n_modes)
    report_ : SolveReport
    energy_ : float
        ``int V rho d^3x / (4 pi)``.
    """

    def __init__(self, n_modes=15, ksq=0.0, tol=1e-12, max_iter=None, jacobi=True, panels=64):
        self.n_modes = n_modes
        self.ksq = ksq
        self.tol = tol
        self.max_iter = max_iter
        self.jacobi = jacobi
        self.panels = panels

    def fit(self, terms, y=None):
        n = int(self.n_modes)
        rule = composite_quadrature(max(int(self.panels), n // 2), 32)
        rho = np.zeros((n, n, n))
        for weight, fx, fy, fz in terms:
            a, b, c = (project_1d(g, rule, n, physical=True) for g in (fx, fy, fz))
            rho += weight * np.einsum("i,j,k->ijk", a, b, c)
        M = screened_generator(n, self.ksq)
        coef, report = solve_3d(M, 4.0 * np.pi * KRON_RHS_SCALE * rho, tol=self.tol,
                                max_iter=self.max_iter, jacobi=self.jacobi)
        self.density_moments_ = rho
        self.coef_ = coef
        self.report_ = report
        self.energy_ = hartree_energy(coef, rho, kappa=HARTREE_KAPPA)
        return self

    def predict(self, X):
        """Potential at physical points ``X`` of shape (n_samples, 3)."""
        check_is_fitted(self, "coef_")
        X = check_array(X)
        if X.shape[1] != 3:
            raise ValueError(f"expected 3 coordinates per sample, got {X.shape[1]}")
        n = self.coef_.shape[0]
        B = [sine_basis(to_computational(X[:, d]), n) for d in range(3)]
        return np.einsum("lmn,ls,ms,ns->s", self.coef_, *B, optimize=True)
