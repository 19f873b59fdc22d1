"""Benchmark problems: 1D decay-class convergence and the 3D Hartree table."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidInputError, SingularSystemError
from .hartree import hartree_energy
from .mapping import eval_expansion_physical, to_physical
from .operators import assemble_helmholtz_1d
from .projection import composite_quadrature, parity_mask, project_1d
from .solvers import SolveReport, solve_1d, solve_3d

log = logging.getLogger(__name__)

CASES_1D = ("exp-osc", "alg", "alg-osc")


def _alg_parts(x, h):
    """``q = (1+x^2)^-h`` and its first two derivatives."""
    w = 1.0 + x * x
    q = w**-h
    dq = -2.0 * h * x * w ** (-h - 1.0)
    d2q = w ** (-h - 2.0) * ((4.0 * h * h + 2.0 * h) * x * x - 2.0 * h)
    return q, dq, d2q


@dataclass(frozen=True)
class BenchCase1D:
    """Exact solution ``u`` of ``-u'' + gamma u = f`` on the real line.

    * ``exp-osc``: ``sin(k x) exp(-x^2)``
    * ``alg``: ``(1 + x^2)^-h``
    * ``alg-osc``: ``sin(k x) (1 + x^2)^-h``
    """

    case: str
    k: float = 2.0
    h: float = 2.0
    gamma: float = 2.0

    def __post_init__(self):
        if self.case not in CASES_1D:
            raise InvalidInputError(f"unknown case {self.case!r}; expected one of {CASES_1D}")

    @property
    def symmetry(self):
        """Symmetry of ``u`` about ``y = pi/2``: even-in-x is 'symmetric'."""
        return "symmetric" if self.case == "alg" else "antisymmetric"

    def u(self, x):
        x = np.asarray(x, dtype=float)
        if self.case == "exp-osc":
            return np.sin(self.k * x) * np.exp(-x * x)
        q = (1.0 + x * x) ** -self.h
        return q if self.case == "alg" else np.sin(self.k * x) * q

    def u_xx(self, x):
        x = np.asarray(x, dtype=float)
        k = self.k
        if self.case == "exp-osc":
            e = np.exp(-x * x)
            return e * ((4.0 * x * x - 2.0 - k * k) * np.sin(k * x) - 4.0 * k * x * np.cos(k * x))
        q, dq, d2q = _alg_parts(x, self.h)
        if self.case == "alg":
            return d2q
        s, c = np.sin(k * x), np.cos(k * x)
        return -k * k * s * q + 2.0 * k * c * dq + s * d2q

    def forcing(self, x):
        """``f = -u'' + gamma u`` in closed form."""
        return -self.u_xx(x) + self.gamma * self.u(x)


@dataclass(frozen=True)
class ConvergenceRecord:
    case: str
    N: int
    max_norm_error: float
    wall_time: float
    parity_mode: str = "full"


def sample_points(count: int) -> np.ndarray:
    """``count`` physical points, uniform in y over the open interval (0, pi)."""
    y = np.pi * np.arange(1, count + 1) / (count + 1)
    return to_physical(y)


def forcing_rule(n_modes: int):
    """Composite rule for 1D forcings: 32-point panels, at least 64 of them."""
    return composite_quadrature(max(64, n_modes // 2), 32)


def solve_case_1d(case: BenchCase1D, n_modes: int, *, restrict: bool = False):
    """Sine coefficients of the Galerkin solution of ``case`` with ``n_modes`` modes.

    With ``restrict`` only the modes allowed by the case's symmetry are kept as
    unknowns; the operator never couples odd and even modes, so this is the
    sub-block of the full system.
    """
    rule = forcing_rule(n_modes)
    f = project_1d(case.forcing, rule, n_modes, physical=True)
    M = assemble_helmholtz_1d(n_modes, case.gamma).toarray()
    if not restrict:
        return solve_1d(M, f)
    keep = parity_mask(n_modes, case.symmetry)
    c = np.zeros(n_modes)
    c[keep] = solve_1d(M[np.ix_(keep, keep)], f[keep])
    return c


def run_convergence_1d(case: BenchCase1D, n_list, sample_count: int = 1000, *, parity="full"):
    """Max-norm error of the Galerkin solution for every basis size in ``n_list``.

    ``parity`` is ``"full"`` or ``"auto"``; ``"auto"`` drops the modes the
    exact solution's symmetry forbids.  A singular system yields a record
    with ``NaN`` error and the sweep continues.
    """
    n_list = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise InvalidInputError("n_list must be strictly ascending")
    if sample_count < 100:
        raise InvalidInputError("sample_count must be at least 100")
    if parity not in ("full", "auto"):
        raise InvalidInputError(f"parity must be 'full' or 'auto', got {parity!r}")
    restrict = parity == "auto"
    mode = "restricted" if restrict else "full"
    x = sample_points(sample_count)
    exact = case.u(x)
    records = []
    for n in n_list:
        start = time.perf_counter()
        try:
            coef = solve_case_1d(case, n, restrict=restrict)
            err = float(np.max(np.abs(eval_expansion_physical(coef, x) - exact)))
        except SingularSystemError as exc:
            log.warning("%s N=%d: %s", case.case, n, exc)
            err = math.nan
        records.append(ConvergenceRecord(case.case, n, err, time.perf_counter() - start, mode))
    return records


# Test density x1 x2 x3 (6 + 4 r^2) exp(-r^2) splits into separable terms
# 6 a a a + 4 (b a a + a b a + a a b) with a = x exp(-x^2), b = x^3 exp(-x^2).
def _density_a(x):
    return x * np.exp(-x * x)


def _density_b(x):
    return x**3 * np.exp(-x * x)


def density(x1, x2, x3):
    """The 3D test charge density, antisymmetric in each coordinate."""
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return x1 * x2 * x3 * (6.0 + 4.0 * r2) * np.exp(-r2)


def density_moments(n_modes: int, panels: int = 64) -> np.ndarray:
    """Sine-moment tensor of the test density, from 1D integrals only."""
    rule = composite_quadrature(max(panels, n_modes // 2), 32)
    a = project_1d(_density_a, rule, n_modes, physical=True)
    b = project_1d(_density_b, rule, n_modes, physical=True)
    outer = lambda p, q, r: np.einsum("i,j,k->ijk", p, q, r)
    return 6.0 * outer(a, a, a) + 4.0 * (outer(b, a, a) + outer(a, b, a) + outer(a, a, b))


# The literal Kronecker sum uses identity blocks where the Galerkin mass
# matrix is (pi/2) I, so the true 3D system is (pi/2)^2 times it.
KRON_RHS_SCALE = (2.0 / np.pi) ** 2
# Energies are reported as int V rho d^3x / (4 pi) with -lap V + k^2 V = 4 pi rho;
# rho has coefficients (2/pi)^3 times its moments.
HARTREE_KAPPA = (2.0 / np.pi) ** 3 / (4.0 * np.pi)


@dataclass(frozen=True)
class Table3DRow:
    N: int
    ksq: float
    energy: float
    report: SolveReport = field(repr=False)

    @property
    def case(self):
        return f"table3d_k{self.ksq:g}".replace("-", "m")


def screened_generator(n_modes: int, ksq: float):
    """1D matrix whose Kronecker sum is the 3D operator ``-lap + ksq``.

    The screening term enters once per axis, so each axis carries a third.
    """
    return assemble_helmholtz_1d(n_modes, ksq / 3.0)


def solve_potential(n_modes: int, ksq: float, rho_moments, tol=1e-12, max_iter=None, jacobi=False):
    """Coefficients of ``V`` solving ``-lap V + ksq V = 4 pi rho``."""
    M = screened_generator(n_modes, ksq)
    rhs = 4.0 * np.pi * KRON_RHS_SCALE * np.asarray(rho_moments)
    return solve_3d(M, rhs, tol=tol, max_iter=max_iter, jacobi=jacobi)


def run_table_3d(ksq: float, n_list, tol: float = 1e-12, max_iter=None, *, jacobi=False):
    """Hartree energy of the test density for each basis size in ``n_list``.

    Rows keep the order of ``n_list``.  A non-converged solve still yields a
    row, computed from the best iterate, with ``report.converged`` False.
    """
    rows = []
    for n in n_list:
        n = int(n)
        rho = density_moments(n)
        c, report = solve_potential(n, ksq, rho, tol=tol, max_iter=max_iter, jacobi=jacobi)
        if not report.converged:
            log.warning("ksq=%g N=%d did not converge (residual %.3g after %d iterations)",
                        ksq, n, report.residual_norm, report.iterations)
        energy = hartree_energy(c, rho, kappa=HARTREE_KAPPA)
        rows.append(Table3DRow(n, float(ksq), energy, report))
    return rows
