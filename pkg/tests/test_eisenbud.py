import pytest

from cisyz.arith import PolyRing, UsageError
from cisyz.asymptotics import complexity_estimate
from cisyz.cring import make_ring, present
from cisyz.eisenbud import (
    identity_defects,
    kernel_dimension_defects,
    lift_resolution,
    matrix_factorization_defects,
    operator_map,
    operators,
    scan_operator,
)
from cisyz.resolve import resolve
from conftest import load, resolution

ONE = (0, 0)


def test_hypersurface_lifts_and_operator_is_identity():
    L = lift_resolution(resolution("x2y2_ax2"))
    assert L.differentials[0] == [{(0, (2, 0)): 1}]
    assert L.differentials[1] == [{(0, (0, 2)): 1}]
    E = operators(L)
    for i in E.steps:
        assert E.lifted[i] == [[{(0, ONE): 1}]]
    assert identity_defects(E) == []


def test_residue_field_over_hypersurface():
    R = resolution("x2y2_residue")
    E = operators(lift_resolution(R))
    assert identity_defects(E) == []
    onset = R.degree_period_onset
    assert matrix_factorization_defects(E, onset) == []


def test_short_window_rejected():
    _, _, M = load("x2y2_residue")
    with pytest.raises(UsageError):
        lift_resolution(resolve(M, steps=2))


def test_free_module_operators_are_empty():
    E = operators(lift_resolution(resolution("free_module")))
    assert all(not col for i in E.steps for t in E.lifted[i] for col in t)


def test_periodic_operator_is_isomorphism():
    E = operators(lift_resolution(resolution("x2y2_ax2")))
    op = operator_map(E, [1], 3)
    assert op.surjective and op.well_defined
    assert op.kernel.rank == 0


def test_codim_two_operator_kernel_has_complexity_one():
    R = resolution("ci2_generic", 8)
    E = operators(lift_resolution(R))
    op = scan_operator(E, 3, trials=10, seed=1)
    assert op.surjective and op.well_defined
    assert kernel_dimension_defects(op, R.modules[5], R.modules[3], 10) == []
    K = resolve(op.kernel, steps=8)
    assert complexity_estimate(K.betti) == 1


def test_zero_coefficients():
    R = resolution("ci2_axy", 6)
    E = operators(lift_resolution(R))
    op = operator_map(E, [0, 0], 2)
    assert op.surjective is False and op.witness is not None


def test_mixed_degree_coefficients_rejected():
    Q = PolyRing(101, ("x", "y", "z"))
    A = make_ring(Q, ["x^2", "y^3"])
    R = resolve(present(A, 1, columns=[["x"], ["y"]]), steps=5)
    E = operators(lift_resolution(R))
    with pytest.raises(UsageError):
        operator_map(E, [1, 1], 1)


def test_scan_is_deterministic_and_validates_trials():
    E = operators(lift_resolution(resolution("ci2_residue", 7)))
    a = scan_operator(E, 3, trials=10, seed=7)
    b = scan_operator(E, 3, trials=10, seed=7)
    assert a.coeffs == b.coeffs and a.trials_used == b.trials_used
    assert a.surjective
    with pytest.raises(UsageError):
        scan_operator(E, 3, trials=0)


def test_scan_on_periodic_tail_succeeds_first_try():
    E = operators(lift_resolution(resolution("x2y2_residue")))
    op = scan_operator(E, 6, trials=5, seed=0)
    assert op.surjective and op.trials_used == 1
    assert op.kernel.rank == 0


@pytest.mark.parametrize("name", ["ci2_axy", "ci2_residue"])
def test_consecutive_kernels_are_syzygies(name):
    # with the same t at steps n and n+1, K_{n+1} and Syz_1(K_n) have equal Hilbert functions
    from cisyz.hilbert import oracle_dim
    from cisyz.resolve import next_syzygy

    R = resolution(name, 8)
    E = operators(lift_resolution(R))
    for n in (2, 3, 4):
        a, b = operator_map(E, [1, 3], n), operator_map(E, [1, 3], n + 1)
        assert a.surjective and b.surjective
        S, K = next_syzygy(a.kernel), b.kernel
        base = min(S.shifts + K.shifts)
        assert [oracle_dim(S, d) for d in range(base, base + 13)] == \
            [oracle_dim(K, d) for d in range(base, base + 13)]
