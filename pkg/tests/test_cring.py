import pytest

from cisyz.arith import PolyRing, UsageError
from cisyz.cring import NotRegularSequence, make_ring, mcm_check, minimalize, present
from cisyz.hilbert import hilbert_series, oracle_dim

Q2 = PolyRing(101, ("x", "y"))
Q3 = PolyRing(101, ("x", "y", "z"))


def test_make_ring_hypersurface():
    A = make_ring(Q2, ["x^2*y^2"])
    assert (A.codim, A.dim) == (1, 1)
    # (1 - z^4)/(1 - z)^2
    assert hilbert_series(present(A, 1)).numerator == {0: 1, 4: -1}


def test_make_ring_codim_two():
    A = make_ring(Q3, ["x^2", "y^2"])
    assert (A.codim, A.dim) == (2, 1)
    assert hilbert_series(present(A, 1)).numerator == {0: 1, 2: -2, 4: 1}


def test_make_ring_rejects_non_regular():
    with pytest.raises(NotRegularSequence) as info:
        make_ring(Q2, ["x^2", "x^3"])
    assert "numerator" in info.value.witness


def test_make_ring_rejects_inhomogeneous():
    with pytest.raises(UsageError):
        make_ring(Q2, ["x^2 + y"])


def test_present_examples():
    A = make_ring(Q2, ["x^2*y^2"])
    M = present(A, 1, columns=[["x^2"]])
    assert M.rank == 1 and len(M.relations) == 1
    A3 = make_ring(Q2, ["x*y^2"])
    assert len(present(A3, 1, columns=[["x"]]).relations) == 1
    F = present(A, 1)
    assert F.relations == ()
    with pytest.raises(UsageError):
        present(A, 1, columns=[["x^2 + y"]])


def test_minimalize_unit_relation_kills_module():
    A = make_ring(Q2, ["x^2*y^2"])
    assert minimalize(present(A, 1, columns=[[1]])).rank == 0


def test_minimalize_splits_unit_entry():
    A = make_ring(Q2, ["x^2*y^2"])
    # one column (x, 1) with generator degrees (0, 1)
    M = present(A, 2, shifts=(0, 1), columns=[["x", "1"]])
    N = minimalize(M)
    assert N.rank == 1 and N.relations == ()
    for d in range(10):
        assert oracle_dim(M, d) == oracle_dim(N, d)


def test_minimalize_idempotent():
    A = make_ring(Q3, ["x^2", "y^2"])
    M = minimalize(present(A, 1, columns=[["x"]]))
    N = minimalize(M)
    assert N.canonical() == M.canonical()


def test_mcm_examples():
    A = make_ring(Q2, ["x^2*y^2"])
    assert mcm_check(present(A, 1, columns=[["x^2"]])) is True
    assert mcm_check(present(A, 1)) is True
    B = make_ring(Q3, ["x^2", "y^2"])
    assert mcm_check(present(B, 1, columns=[["x"], ["y"], ["z"]])) is False


def test_lift_expresses_ideal_members():
    A = make_ring(Q3, ["x^2", "y^2"])
    h = Q3("x^2*z + 3*y^3").raw
    qs = A.lift(h)
    total = {}
    for q, f in zip(qs, A.f):
        for m, c in q.items():
            for mm, cc in f.items():
                k = tuple(a + b for a, b in zip(m, mm))
                total[k] = (total.get(k, 0) + c * cc) % 101
    assert {k: c for k, c in total.items() if c} == h
    with pytest.raises(ArithmeticError):
        A.lift(Q3("x*y").raw)
