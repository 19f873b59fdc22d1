"""Fast oracle checks shipped with the package (``mappedsine selftest``)."""

from __future__ import annotations

import numpy as np
from scipy import integrate

from .bench import BenchCase1D, run_convergence_1d
from .hartree import build_overlap_matrix, hartree_energy
from .operators import OperatorSpec, assemble_general_1d, assemble_helmholtz_1d, assemble_poisson_1d
from .solvers import kronecker_apply, solve_3d


def _dense_kron_sum(A):
    n = A.shape[0]
    I = np.eye(n)
    return np.kron(np.kron(A, I), I) + np.kron(np.kron(I, A), I) + np.kron(np.kron(I, I), A)


def check_poisson_closed_form():
    n = 32
    err = np.abs(
        assemble_poisson_1d(n).toarray() - assemble_general_1d(OperatorSpec(L2=1.0), n).toarray()
    ).max()
    return err <= 1e-10, f"max |closed form - quadrature| = {err:.2e}"


def check_helmholtz_closed_form():
    n = 32
    err = np.abs(
        assemble_helmholtz_1d(n, 2.0).toarray()
        - assemble_general_1d(OperatorSpec(L2=-1.0, L0=2.0), n).toarray()
    ).max()
    return err <= 1e-10, f"max |closed form - quadrature| = {err:.2e}"


def check_overlap():
    n = 8
    E = build_overlap_matrix(n)
    worst = 0.0
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            val, _ = integrate.quad(
                lambda y: np.sin(i * y) * np.sin(j * y) / np.sin(y) ** 2, 0.0, np.pi,
                epsabs=1e-12, epsrel=1e-12, limit=200,
            )
            worst = max(worst, abs(val - E[i - 1, j - 1]))
    return worst <= 1e-8, f"max |closed form - adaptive quadrature| = {worst:.2e}"


def check_kronecker_oracle():
    rng = np.random.default_rng(7)
    A = rng.standard_normal((3, 3)) + 6.0 * np.eye(3)
    c = rng.standard_normal((3, 3, 3))
    K = _dense_kron_sum(A)
    # C-order flattening puts the last axis fastest; the operator is symmetric in axes
    err_apply = np.abs(kronecker_apply(A, c).ravel() - K @ c.ravel()).max()
    f = rng.standard_normal((3, 3, 3))
    sol, report = solve_3d(A, f, tol=1e-13, max_iter=500)
    ref = np.linalg.solve(K, f.ravel())
    err_solve = np.abs(sol.ravel() - ref).max() / np.abs(ref).max()
    ok = err_apply <= 1e-12 and err_solve <= 1e-8 and report.converged
    return ok, f"apply {err_apply:.1e}, solve {err_solve:.1e}"


def check_hartree_oracle():
    rng = np.random.default_rng(11)
    c = rng.standard_normal((2, 2, 2))
    f = rng.standard_normal((2, 2, 2))
    E = build_overlap_matrix(2)
    E3 = np.kron(np.kron(E, E), E)
    ref = c.ravel() @ E3 @ f.ravel()
    err = abs(hartree_energy(c, f) - ref)
    return err <= 1e-12, f"|contraction - dense| = {err:.1e}"


def check_exact_expansion():
    rec = run_convergence_1d(BenchCase1D("alg", h=3.5, gamma=2.0), [16], 1000)[0]
    return rec.max_norm_error <= 1e-13, f"max-norm error {rec.max_norm_error:.2e} at N=16"


CHECKS = {
    "poisson closed form": check_poisson_closed_form,
    "helmholtz closed form": check_helmholtz_closed_form,
    "overlap matrix": check_overlap,
    "kronecker-sum oracle": check_kronecker_oracle,
    "hartree contraction oracle": check_hartree_oracle,
    "exact finite expansion": check_exact_expansion,
}


def run(out=print) -> bool:
    """Run every check, print one line each, and return True if all pass."""
    all_ok = True
    for name, check in CHECKS.items():
        ok, detail = check()
        all_ok &= bool(ok)
        out(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
