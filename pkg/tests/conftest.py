import warnings

import numpy as np
import pytest
from scipy import integrate


def quad(fun, a=0.0, b=np.pi, tol=1e-14):
    """Adaptive-quadrature oracle, independent of the package's Gauss rules.

    Gauss-Kronrod never samples the interval ends, so integrands with a
    removable singularity there are fine.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(fun, a, b, epsabs=tol, epsrel=tol, limit=400)
    return val


def dense_kron_sum(A):
    n = A.shape[0]
    I = np.eye(n)
    return np.kron(np.kron(A, I), I) + np.kron(np.kron(I, A), I) + np.kron(np.kron(I, I), A)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
