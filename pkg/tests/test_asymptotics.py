from fractions import Fraction

from hypothesis import given, settings, strategies as st

from cisyz.asymptotics import (
    FAILS,
    HOLDS,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    StepRow,
    check_inequality,
    check_reg_bounded,
    complexity_estimate,
    fit_quasi_polynomial,
    poly_eval,
)
from conftest import analysis, load


def test_fit_constructed_sequence():
    seq = [(i // 2 + 1) if i % 2 == 0 else 1 for i in range(16)]
    fit = fit_quasi_polynomial(seq)
    assert fit.polys == ((1, 1), (1,))
    assert fit.degree == 1 and not fit.inconclusive
    assert all(fit(i) == v for i, v in enumerate(seq))


def test_fit_constant():
    fit = fit_quasi_polynomial([2] * 10)
    assert fit.polys == ((2,), (2,)) and fit.degree == 0


def test_fit_with_start_and_onset():
    seq = [1, 2, 2, 2, 2, 2, 2, 2, 2]
    fit = fit_quasi_polynomial(seq)
    assert fit.degree == 0 and fit.onset == 1
    fit = fit_quasi_polynomial([5, 7, 9, 11, 13, 15, 17, 19], start=3)
    assert fit(3) == 5 and fit(10) == 19


def test_fit_too_short_is_inconclusive():
    fit = fit_quasi_polynomial([1, 2, 3, 4])
    assert fit.inconclusive and fit.degree is None
    assert complexity_estimate([1, 2, 3]) is None


def test_zero_sequence():
    fit = fit_quasi_polynomial([0] * 8)
    assert fit.degree is None and not fit.inconclusive
    assert complexity_estimate([1, 0, 0, 0, 0, 0, 0, 0]) == 0


def test_complexity_examples():
    assert complexity_estimate([1] * 12) == 1
    assert complexity_estimate(analysis("ci2_residue").resolution.betti) == 2
    assert complexity_estimate(analysis("x2y2_residue").resolution.betti) == 1
    fit = fit_quasi_polynomial(analysis("x2y2_ax2").resolution.betti)
    assert fit.polys == ((1,), (1,))


quasi = st.tuples(
    st.lists(st.integers(-5, 5), min_size=0, max_size=2),
    st.lists(st.integers(-5, 5), min_size=0, max_size=2),
    st.integers(1, 4),
    st.integers(1, 4),
)


@settings(max_examples=60, deadline=None)
@given(quasi)
def test_double_sum_raises_degree(data):
    # g has positive leading coefficients in both classes; f(i) = sum of g over i, i-2, ...
    low0, low1, lead0, lead1 = data
    P0, P1 = tuple(low0) + (lead0,), tuple(low1) + (lead1,)
    g = [poly_eval(P0 if i % 2 == 0 else P1, i // 2) for i in range(30)]
    f = []
    for i in range(30):
        f.append(g[i] + (f[i - 2] if i >= 2 else 0))
    fg, ff = fit_quasi_polynomial(g), fit_quasi_polynomial(f)
    assert not fg.inconclusive and not ff.inconclusive
    assert ff.degree == fg.degree + 1
    assert all(ff(i) == f[i] for i in range(30))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=6, max_size=20))
def test_fit_never_misreports(seq):
    fit = fit_quasi_polynomial(seq)
    if not fit.inconclusive:
        for i in range(fit.onset, len(seq)):
            assert fit(i) == Fraction(seq[i])


def test_verdicts_for_first_example():
    A = analysis("x2y2_ax2")
    assert A.cx == 1
    assert A.report("e0-quasi-polynomial").verdict == HOLDS
    assert A.report("e1-quasi-polynomial").verdict == NOT_APPLICABLE
    ineq = A.report("e1-inequality")
    assert ineq.verdict == HOLDS and ineq.witness["equality_all_parities"]
    assert A.report("reg-bounded").verdict == HOLDS


def test_verdicts_for_ulrich_example():
    A = analysis("x3_ax")
    e0 = [r.e[0] for r in A.rows]
    assert e0[:4] == [1, 2, 1, 2]
    assert A.report("e0-quasi-polynomial").verdict == HOLDS


def test_even_class_equality_for_third_example():
    A = analysis("xy2_ax")
    r0 = A.rows[0]
    assert (r0.e[1], r0.e[0], r0.mu) == (0, 1, 1)


def test_free_module_inequality():
    A = analysis("free_module")
    r0 = A.rows[0]
    assert r0.e == (4, 6) and r0.e[1] >= r0.e[0] - r0.mu
    assert A.cx == 0
    assert A.report("reg-bounded").verdict == HOLDS


def test_codim_two_all_hold():
    A = analysis("ci2_axy")
    assert A.cx == 2
    assert set(A.verdicts.values()) == {HOLDS}


def test_inequality_detects_violation():
    _, ring, _ = load("ci2_axy")
    rows = [StepRow(i, 1, (i,), 1, (3, 0), 0, True) for i in range(12)]
    rep = check_inequality(ring, rows, 1)
    assert rep.verdict == FAILS


def test_reg_bounded_not_applicable_without_equality():
    _, ring, _ = load("ci2_axy")
    # leading coefficients per parity: e1 ~ 4m, e0 - mu ~ 2m, so no equality
    rows = [StepRow(i, i + 1, (i,) * (i + 1), 1, (2 * i, 2 * i), i, True) for i in range(12)]
    ineq = check_inequality(ring, rows, 2)
    assert ineq.verdict == HOLDS and not ineq.witness["equality_all_parities"]
    rep = check_reg_bounded(ring, rows, 2, ineq)
    assert rep.verdict in (NOT_APPLICABLE, INCONCLUSIVE)
