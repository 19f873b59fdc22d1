import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import quad
from mappedsine.projection import build_quadrature
from mappedsine.exceptions import EvaluationError, InvalidInputError
from mappedsine.operators import (
    OperatorSpec,
    assemble_general_1d,
    assemble_helmholtz_1d,
    assemble_poisson_1d,
    poisson_parts,
)

PI = np.pi


def m2_oracle(m, n):
    return -n * n * quad(lambda y: np.sin(m * y) * np.sin(y) ** 4 * np.sin(n * y))


def m12_oracle(m, n):
    return n * quad(lambda y: np.sin(m * y) * np.sin(y) ** 2 * np.sin(2 * y) * np.cos(n * y))


def test_documented_entries():
    m2, m12 = (p.toarray() for p in poisson_parts(4))
    assert m2_oracle(1, 1) == pytest.approx(-5 * PI / 16, abs=1e-13)
    assert m2[0, 0] == pytest.approx(-5 * PI / 16, abs=1e-15)
    assert m2_oracle(1, 3) == pytest.approx(45 * PI / 32, abs=1e-13)
    assert m2[0, 2] == pytest.approx(45 * PI / 32, abs=1e-14)
    assert m12_oracle(1, 1) == pytest.approx(PI / 8, abs=1e-13)
    assert m12[0, 0] == pytest.approx(PI / 8, abs=1e-15)


def test_closed_forms_match_adaptive_quadrature():
    N = 10
    m2, m12 = (p.toarray() for p in poisson_parts(N))
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            assert m2[m - 1, n - 1] == pytest.approx(m2_oracle(m, n), abs=1e-10)
            assert m12[m - 1, n - 1] == pytest.approx(m12_oracle(m, n), abs=1e-10)


@pytest.mark.parametrize("N", [1, 2, 3, 5, 8, 17, 32])
def test_poisson_matches_quadrature_assembly(N):
    closed = assemble_poisson_1d(N).toarray()
    general = assemble_general_1d(OperatorSpec(L2=1.0), N).toarray()
    assert np.max(np.abs(closed - general)) <= 1e-10


@pytest.mark.parametrize("N", [1, 4, 8, 16, 32])
def test_helmholtz_matches_quadrature_assembly(N):
    closed = assemble_helmholtz_1d(N, 2.0).toarray()
    general = assemble_general_1d(OperatorSpec(L2=-1.0, L0=2.0), N).toarray()
    assert np.max(np.abs(closed - general)) <= 1e-10
    via_gamma = assemble_general_1d(OperatorSpec(L2=-1.0, gamma=2.0), N).toarray()
    assert np.max(np.abs(closed - via_gamma)) <= 1e-10


def test_mass_only_operator():
    M = assemble_general_1d(OperatorSpec(L0=1.0), 4).toarray()
    assert np.allclose(M, PI / 2 * np.eye(4), atol=1e-12)


def test_first_order_term_against_oracle():
    # L1 = cos(y): [M1]_{mn} = n * int sin(my) cos(y) sin^2(y) cos(ny) dy
    N = 6
    M = assemble_general_1d(OperatorSpec(L1=np.cos), N).toarray()
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            ref = n * quad(lambda y: np.sin(m * y) * np.cos(y) * np.sin(y) ** 2 * np.cos(n * y))
            assert M[m - 1, n - 1] == pytest.approx(ref, abs=1e-12)


def test_helmholtz_examples():
    assert np.allclose(assemble_helmholtz_1d(8, 0.0).toarray(), -assemble_poisson_1d(8).toarray())
    H = assemble_helmholtz_1d(8, 2.0).toarray()
    assert H[0, 0] == pytest.approx(5 * PI / 16 - PI / 8 + PI, abs=1e-14)
    i, j = np.indices(H.shape)
    assert np.all(H[(i - j) % 2 == 1] == 0.0)


@given(st.integers(1, 200))
def test_sparsity_pattern(N):
    M = assemble_poisson_1d(N)
    rows = np.repeat(np.arange(1, N + 1), np.diff(M.indptr))
    cols = M.indices + 1
    d, s = np.abs(rows - cols), rows + cols
    assert np.all(np.isin(d, (0, 2, 4)) | np.isin(s, (2, 4)))
    assert np.diff(M.indptr).max() <= 7
    assert np.all(np.isfinite(M.data))


def test_deterministic_row_major_storage():
    A = assemble_poisson_1d(40)
    B = assemble_poisson_1d(40)
    assert A.has_sorted_indices
    assert np.array_equal(A.indptr, B.indptr)
    assert np.array_equal(A.indices, B.indices)
    assert np.array_equal(A.data, B.data)


def test_n_squared_scaling_along_diagonal():
    m2, _ = poisson_parts(30)
    diag = m2.diagonal()
    n = np.arange(1, 31)
    # rows 1 and 2 also collect the m + n in {2, 4} deltas
    assert np.allclose(diag[2:], -6 * PI / 32 * n[2:] ** 2, rtol=1e-15)


def test_invalid_inputs():
    with pytest.raises(InvalidInputError):
        assemble_poisson_1d(0)
    with pytest.raises(InvalidInputError):
        assemble_general_1d(OperatorSpec(L2=1.0), 40, rule=build_quadrature(64))
    with pytest.raises(EvaluationError):
        assemble_general_1d(OperatorSpec(L2=lambda y: np.full_like(y, np.inf)), 4)
