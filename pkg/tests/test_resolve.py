import math

import pytest

from cisyz.arith import PolyRing
from cisyz.cring import make_ring, polynomial_ring, present
from cisyz.hilbert import oracle_dim
from cisyz.resolve import (
    NEG_INF,
    composition_defects,
    exactness_defects,
    minimality_defects,
    next_syzygy,
    q_resolution,
    regularity,
    resolve,
)
from conftest import resolution

Q2 = PolyRing(101, ("x", "y"))


def test_first_syzygy_of_a_mod_x2():
    A = make_ring(Q2, ["x^2*y^2"])
    S = next_syzygy(present(A, 1, columns=[["x^2"]]))
    assert S.rank == 1 and S.shifts == (2,)
    want = present(A, 1, shifts=(2,), columns=[["y^2"]])
    for d in range(14):
        assert oracle_dim(S, d) == oracle_dim(want, d)


def test_first_syzygy_of_a_mod_x_over_x3():
    A = make_ring(Q2, ["x^3"])
    S = next_syzygy(present(A, 1, columns=[["x"]]))
    want = present(A, 1, shifts=(1,), columns=[["x^2"]])
    assert S.rank == 1
    for d in range(14):
        assert oracle_dim(S, d) == oracle_dim(want, d)


def test_free_module_has_no_syzygies():
    A = make_ring(Q2, ["x^2*y^2"])
    R = resolve(present(A, 2, shifts=(0, 3)))
    assert R.betti == [2, 0] and R.is_finite()


def test_q_resolution_of_hypersurface():
    A = make_ring(Q2, ["x^2*y^2"])
    R = q_resolution(present(A, 1))
    assert R.graded_betti == [[0], [4], []]


def test_regularity_examples():
    Q = polynomial_ring(Q2)
    k = present(Q, 1, columns=[["x"], ["y"]])
    assert regularity(k) == 0
    A = make_ring(Q2, ["x^2*y^2"])
    assert regularity(present(A, 1)) == 3
    assert regularity(present(Q, 1, shifts=(5,))) == 5
    assert regularity(present(A, 1, columns=[[1]])) == NEG_INF and math.isinf(NEG_INF)


def test_budget_truncates():
    A = make_ring(PolyRing(101, ("x", "y", "z")), ["x^2", "y^2"])
    k = present(A, 1, columns=[["x"], ["y"], ["z"]])
    R = resolve(k, steps=30, budget=0.0)
    assert R.truncated and "budget" in R.reason
    assert R.length < 30


def test_hypersurface_resolution_is_periodic():
    R = resolution("x2y2_ax2")
    assert R.betti == [1] * 13
    assert R.period_onset == 0
    R = resolution("x2y2_residue")
    assert R.degree_period_onset is not None


def test_codim_two_betti_grow_linearly():
    assert resolution("ci2_axy").betti[:6] == [1, 2, 3, 4, 5, 6]
    assert resolution("ci2_ax").betti[:6] == [1] * 6


@pytest.mark.parametrize("name", ["x2y2_residue", "ci2_ax", "free_module"])
def test_soundness_checks(name):
    R = resolution(name, 8)
    assert composition_defects(R) == []
    assert minimality_defects(R) == []
    assert exactness_defects(R, 8) == []


def test_steps_must_be_positive():
    A = make_ring(Q2, ["x^2*y^2"])
    with pytest.raises(ValueError):
        resolve(present(A, 1), steps=0)


def test_q_resolution_koszul_and_cyclic():
    Q = polynomial_ring(Q2)
    R = q_resolution(present(Q, 1, columns=[["x"], ["y"]]))
    assert R.betti == [1, 2, 1, 0]
    # over Q the module A/(x^2) is Q/(x^2): one relation, no second syzygy
    A = make_ring(Q2, ["x^2*y^2"])
    R = q_resolution(present(A, 1, columns=[["x^2"]]))
    assert R.graded_betti == [[0], [2], []]


def test_regularity_shift():
    A = make_ring(Q2, ["x^2*y^2"])
    M = present(A, 1, columns=[["x^2"]])
    N = present(A, 1, shifts=(3,), columns=[["x^2"]])
    assert regularity(N) == regularity(M) + 3


def test_residue_field_betti_over_hypersurface():
    assert resolution("x2y2_residue").betti == [1] + [2] * 12
    R = resolution("x2y2_ax2")
    mats = [R.differential(i) for i in range(1, 6)]
    assert mats[0] == mats[2] == mats[4] == [{(0, (2, 0)): 1}]
    assert mats[1] == mats[3] == [{(0, (0, 2)): 1}]
