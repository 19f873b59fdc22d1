"""Linear solves for the 1D Galerkin system and the 3D Kronecker-sum system."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy import sparse

from .exceptions import InvalidInputError, SingularSystemError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SolveReport:
    """Outcome of an iterative solve.

    ``residual_norm`` is the relative true residual ``||A c - f|| / ||f||``
    of the returned iterate, recomputed from scratch after the iteration.
    """

    iterations: int
    residual_norm: float
    converged: bool
    wall_time: float
    tol: float


def _dense(M) -> np.ndarray:
    return M.toarray() if sparse.issparse(M) else np.asarray(M, dtype=float)


def solve_1d(M, f) -> np.ndarray:
    """Solve ``M c = f`` by LU factorisation.

    Raises:
        InvalidInputError: on a shape mismatch.
        SingularSystemError: if the reciprocal condition estimate is below
            machine epsilon; the estimate is attached as ``condition``.
    """
    A = _dense(M)
    f = np.asarray(f, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != f.size:
        raise InvalidInputError(f"matrix {A.shape} does not match right-hand side {f.shape}")
    anorm = np.abs(A).sum(axis=0).max()
    with warnings.catch_warnings():
        # exact singularity is reported below through the condition estimate
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
    rcond, _ = scipy.linalg.lapack.dgecon(lu, anorm, norm="1")
    if not rcond > _EPS:
        cond = float("inf") if rcond == 0 else 1.0 / rcond
        raise SingularSystemError(f"Galerkin matrix is singular (cond ~ {cond:.3g})", cond)
    return scipy.linalg.lu_solve((lu, piv), f)


def kronecker_apply(M, c) -> np.ndarray:
    """Apply ``I(x)I(x)M + I(x)M(x)I + M(x)I(x)I`` to a coefficient tensor.

    ``M`` acts along each of the three tensor axes in turn and the results
    are summed; the ``N^3 x N^3`` matrix is never formed.
    """
    A = _dense(M)
    c = np.asarray(c, dtype=float)
    n = A.shape[0]
    if c.shape != (n, n, n):
        raise InvalidInputError(f"tensor of shape {c.shape} does not match matrix side {n}")
    out = np.tensordot(A, c, axes=(1, 0))
    out += np.einsum("bj,ijk->ibk", A, c, optimize=True)
    out += np.tensordot(c, A, axes=(2, 1))
    return out


def _bicgstab(apply, b, x0, tol, max_iter, precond):
    """Unrestarted BiCGSTAB with a true-residual convergence test.

    Returns ``(x, iterations)`` for the iterate with the smallest recurrence
    residual seen; convergence is only accepted after the residual has been
    recomputed as ``b - A x``.
    """
    bnorm = np.linalg.norm(b)
    target = tol * bnorm
    x = x0.copy()
    r = b - apply(x)
    rhat = r.copy()
    p = np.zeros_like(b)
    v = np.zeros_like(b)
    rho = alpha = omega = 1.0
    best_x, best_res = x.copy(), np.linalg.norm(r)
    it = 0
    while it < max_iter:
        if best_res <= target:
            break
        it += 1
        rho_next = np.vdot(rhat, r)
        if rho_next == 0.0 or omega == 0.0:
            break
        beta = (rho_next / rho) * (alpha / omega)
        rho = rho_next
        p = r + beta * (p - omega * v)
        phat = precond(p)
        v = apply(phat)
        denom = np.vdot(rhat, v)
        if denom == 0.0:
            break
        alpha = rho / denom
        s = r - alpha * v
        if np.linalg.norm(s) <= target:
            x = x + alpha * phat
            r = b - apply(x)
        else:
            shat = precond(s)
            t = apply(shat)
            tt = np.vdot(t, t)
            omega = np.vdot(t, s) / tt if tt > 0.0 else 0.0
            x = x + alpha * phat + omega * shat
            r = s - omega * t
            if np.linalg.norm(r) <= target:
                r = b - apply(x)
        res = np.linalg.norm(r)
        if not np.isfinite(res):
            break
        if res < best_res:
            best_x, best_res = x.copy(), res
    return best_x, it


def solve_3d(M, f, tol: float = 1e-12, max_iter: int | None = None, *, jacobi: bool = False):
    """Solve the Kronecker-sum system ``M3D c = f`` matrix-free.

    Args:
        M: the 1D generator; ``M3D`` is its Kronecker sum over three axes.
        f: right-hand side tensor of shape ``(N, N, N)``.
        tol: relative residual target ``||M3D c - f|| <= tol * ||f||``.
        max_iter: iteration cap, ``10 * N`` by default.
        jacobi: precondition with the diagonal of ``M3D``.

    Returns:
        ``(c, report)``.  Hitting ``max_iter`` or a Krylov breakdown is not an
        error: ``report.converged`` is False and ``c`` is the best iterate.
        Indefinite generators (for example a negative screening constant)
        are accepted but rarely converge.
    """
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    A = _dense(M)
    f = np.asarray(f, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or f.shape != (n, n, n):
        raise InvalidInputError(f"matrix {A.shape} does not match tensor {f.shape}")
    if max_iter is None:
        max_iter = 10 * n
    start = time.perf_counter()

    fnorm = np.linalg.norm(f)
    if fnorm == 0.0:
        report = SolveReport(0, 0.0, True, time.perf_counter() - start, tol)
        return np.zeros_like(f), report

    shape = f.shape

    def apply(v):
        return kronecker_apply(A, v.reshape(shape)).ravel()

    if jacobi:
        d = np.diag(A)
        diag = (d[:, None, None] + d[None, :, None] + d[None, None, :]).ravel()
        if np.any(diag == 0.0):
            raise InvalidInputError("Jacobi preconditioner needs a nonzero diagonal")

        def precond(v):
            return v / diag
    else:
        def precond(v):
            return v

    b = f.ravel()
    x, iterations = _bicgstab(apply, b, np.zeros_like(b), tol, max_iter, precond)
    rel = float(np.linalg.norm(b - apply(x)) / fnorm)
    report = SolveReport(
        iterations=iterations,
        residual_norm=rel,
        converged=bool(rel <= tol),
        wall_time=time.perf_counter() - start,
        tol=tol,
    )
    return x.reshape(shape), report
