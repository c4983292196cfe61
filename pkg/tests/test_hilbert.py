import pytest

from cisyz.arith import PolyRing, UsageError
from cisyz.cring import make_ring, present
from cisyz.hilbert import (
    e_coefficient,
    hilbert_samuel,
    hilbert_series,
    make_hilbert_data,
    oracle_dim,
    oracle_samuel,
    samuel_coefficients,
    samuel_data,
    samuel_polynomial,
)
from conftest import EXAMPLES, resolution

Q2 = PolyRing(101, ("x", "y"))
A = make_ring(Q2, ["x^2*y^2"])


def test_series_of_hypersurface():
    H = hilbert_series(present(A, 1))
    assert H.h == {0: 1, 1: 1, 2: 1, 3: 1}
    assert H.dim == 1 and H.e == (4, 6)


def test_series_of_cyclic_examples():
    assert hilbert_series(present(A, 1, columns=[["x^2"]])).e == (2, 1)
    B = make_ring(Q2, ["x*y^2"])
    assert hilbert_series(present(B, 1, columns=[["x"]])).e[1] == 0


def test_zero_module_series():
    H = hilbert_series(present(A, 1, columns=[[1]]))
    assert H.dim is None and H.is_zero()
    with pytest.raises(UsageError):
        e_coefficient(H, 0)


def test_e_coefficient_from_h():
    H = make_hilbert_data({0: 1, 1: 1, 2: 1, 3: 1}, 1)
    assert (e_coefficient(H, 0), e_coefficient(H, 1)) == (4, 6)
    H = make_hilbert_data({0: 2, 1: -1}, 1)
    assert (e_coefficient(H, 0), e_coefficient(H, 1)) == (1, -1)
    H = make_hilbert_data({0: 5}, 1)
    assert (e_coefficient(H, 0), e_coefficient(H, 1)) == (5, 0)
    with pytest.raises(UsageError):
        e_coefficient(H, 2)


def test_hilbert_samuel_examples():
    assert hilbert_samuel(present(A, 1), 4) == 14
    k = present(A, 1, columns=[["x"], ["y"]])
    assert [hilbert_samuel(k, n) for n in range(5)] == [1] * 5
    M = present(A, 1, columns=[["x^2"]])
    H = samuel_data(M)
    for n in range(4, 12):
        assert hilbert_samuel(M, n) == 2 * (n + 1) - 1 == samuel_polynomial(H, n)


def test_oracle_examples():
    assert oracle_dim(present(A, 1), 5) == 4
    k = present(A, 1, columns=[["x"], ["y"]])
    assert oracle_dim(k, 0) == 1 and oracle_dim(k, 1) == 0


def test_samuel_coefficients_in_ring_dimension():
    k = present(A, 1, columns=[["x"], ["y"]])
    assert samuel_coefficients(samuel_data(k), 1) == (0, -1)
    assert samuel_coefficients(samuel_data(present(A, 1)), 1) == (4, 6)
    assert samuel_coefficients(samuel_data(present(A, 1, columns=[[1]])), 1) == (0, 0)


def test_samuel_is_shift_invariant():
    M = present(A, 1, columns=[["x^2"]])
    N = present(A, 1, shifts=(3,), columns=[["x^2"]])
    assert samuel_data(M).e == samuel_data(N).e
    assert hilbert_series(N).e != hilbert_series(M).e


@pytest.mark.parametrize("name", EXAMPLES)
def test_samuel_function_two_routes(name):
    # lead-term route vs dense ranks on M / m^{n+1} M
    R = resolution(name)
    for M in R.modules[:5]:
        if M.rank:
            for n in range(8):
                assert hilbert_samuel(M, n) == oracle_samuel(M, n)


@pytest.mark.parametrize("name", EXAMPLES)
def test_graded_dims_match_oracle(name):
    R = resolution(name)
    for M in R.modules[:4]:
        if M.rank:
            H = hilbert_series(M)
            base = min(M.shifts)
            for d in range(base, base + 8):
                assert H.dim_at(d) == oracle_dim(M, d)
