import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import dense_kron_sum
from mappedsine.bench import BenchCase1D, forcing_rule
from mappedsine.exceptions import InvalidInputError, SingularSystemError
from mappedsine.operators import assemble_helmholtz_1d, assemble_poisson_1d
from mappedsine.projection import project_1d
from mappedsine.solvers import kronecker_apply, solve_1d, solve_3d

PI = np.pi


def test_solve_1d_zero():
    assert np.array_equal(solve_1d(assemble_helmholtz_1d(6, 2.0), np.zeros(6)), np.zeros(6))


def test_solve_1d_identity():
    c = solve_1d(PI / 2 * np.eye(3), [PI / 2, PI, 0])
    assert np.allclose(c, [1, 2, 0], atol=1e-15)


def test_solve_1d_exact_sin7():
    case = BenchCase1D("alg", h=3.5, gamma=2.0)
    N = 20
    f = project_1d(case.forcing, forcing_rule(N), N, physical=True)
    M = assemble_helmholtz_1d(N, 2.0)
    c = solve_1d(M, f)
    expected = np.zeros(N)
    expected[:7] = np.array([35, 0, -21, 0, 7, 0, -1]) / 64
    assert np.max(np.abs(c - expected)) <= 1e-10
    assert np.max(np.abs(M @ c - f)) <= 1e-10 * (1 + np.abs(f).max())


def test_solve_1d_singular():
    with pytest.raises(SingularSystemError) as info:
        solve_1d(np.array([[1.0, 2.0], [2.0, 4.0]]), [1.0, 2.0])
    assert info.value.condition > 1e15


def test_solve_1d_shape_mismatch():
    with pytest.raises(InvalidInputError):
        solve_1d(np.eye(3), np.ones(4))


def test_kronecker_apply_identity_and_zero(rng):
    c = rng.standard_normal((4, 4, 4))
    assert np.allclose(kronecker_apply(PI / 2 * np.eye(4), c), 3 * PI / 2 * c)
    assert np.array_equal(kronecker_apply(assemble_poisson_1d(4), np.zeros((4, 4, 4))), np.zeros((4, 4, 4)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kronecker_apply_matches_dense(rng, n):
    A = rng.standard_normal((n, n))
    c = rng.standard_normal((n, n, n))
    assert np.max(np.abs(kronecker_apply(A, c).ravel() - dense_kron_sum(A) @ c.ravel())) <= 1e-12


def test_kronecker_apply_accepts_sparse(rng):
    M = assemble_poisson_1d(5)
    c = rng.standard_normal((5, 5, 5))
    assert np.allclose(kronecker_apply(M, c), kronecker_apply(M.toarray(), c))


def test_kronecker_apply_mismatch():
    with pytest.raises(InvalidInputError):
        kronecker_apply(np.eye(3), np.zeros((4, 4, 4)))


def test_solve_3d_zero():
    c, rep = solve_3d(assemble_helmholtz_1d(4, 1.0), np.zeros((4, 4, 4)))
    assert np.array_equal(c, np.zeros((4, 4, 4)))
    assert rep.iterations == 0 and rep.converged


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("jacobi", [False, True])
def test_solve_3d_matches_dense(rng, n, jacobi):
    A = rng.standard_normal((n, n)) + 5 * np.eye(n)
    f = rng.standard_normal((n, n, n))
    c, rep = solve_3d(A, f, tol=1e-13, max_iter=1000, jacobi=jacobi)
    ref = np.linalg.solve(dense_kron_sum(A), f.ravel())
    assert rep.converged
    assert np.linalg.norm(c.ravel() - ref) / np.linalg.norm(ref) <= 1e-8


@pytest.mark.parametrize("n", [2, 3, 4])
def test_solve_3d_galerkin_generators(rng, n):
    for M in (-assemble_poisson_1d(n).toarray(), assemble_helmholtz_1d(n, 1.0).toarray()):
        f = rng.standard_normal((n, n, n))
        c, rep = solve_3d(M, f, tol=1e-13, max_iter=500)
        ref = np.linalg.solve(dense_kron_sum(M), f.ravel())
        assert rep.converged
        assert np.linalg.norm(c.ravel() - ref) / np.linalg.norm(ref) <= 1e-8


def test_report_residual_recomputed(rng):
    n = 6
    M = assemble_helmholtz_1d(n, 1.0)
    f = rng.standard_normal((n, n, n))
    c, rep = solve_3d(M, f, tol=1e-10)
    true = np.linalg.norm(kronecker_apply(M, c) - f) / np.linalg.norm(f)
    assert rep.residual_norm == pytest.approx(true, rel=1e-12, abs=1e-300)
    assert rep.converged and rep.residual_norm <= 1e-10
    assert rep.wall_time >= 0 and rep.tol == 1e-10


def test_max_iter_returns_best_iterate(rng):
    n = 8
    M = assemble_helmholtz_1d(n, 1.0)
    f = rng.standard_normal((n, n, n))
    c, rep = solve_3d(M, f, tol=1e-14, max_iter=3)
    assert not rep.converged
    assert rep.iterations == 3
    assert rep.residual_norm < 1.0
    assert np.all(np.isfinite(c))


def test_default_iteration_cap(rng):
    n = 5
    _, rep = solve_3d(assemble_poisson_1d(n), rng.standard_normal((n, n, n)), tol=1e-300)
    assert rep.iterations <= 10 * n and not rep.converged


def test_deterministic(rng):
    n = 7
    M = assemble_helmholtz_1d(n, 1.0)
    f = rng.standard_normal((n, n, n))
    a, ra = solve_3d(M, f)
    b, rb = solve_3d(M, f)
    assert np.array_equal(a, b) and ra.iterations == rb.iterations


@settings(max_examples=10, deadline=None)
@given(st.permutations([0, 1, 2]), st.integers(0, 2**32 - 1))
def test_mode_permutation_symmetry(perm, seed):
    n = 5
    M = assemble_helmholtz_1d(n, 1.0)
    f = np.random.default_rng(seed).standard_normal((n, n, n))
    c, _ = solve_3d(M, f, tol=1e-13, jacobi=True)
    cp, _ = solve_3d(M, np.transpose(f, perm), tol=1e-13, jacobi=True)
    assert np.allclose(np.transpose(cp, np.argsort(perm)), c, atol=1e-10)


def test_solve_3d_validation():
    with pytest.raises(InvalidInputError):
        solve_3d(np.eye(3), np.ones((3, 3, 3)), tol=0)
    with pytest.raises(InvalidInputError):
        solve_3d(np.eye(3), np.ones((2, 2, 2)))
