import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cisyz.estimators import QuasiPolynomialFitter, SyzygyAnalyzer
from conftest import load


def test_fitter_predicts_beyond_window():
    X = np.arange(12)
    y = [(i // 2 + 1) if i % 2 == 0 else 1 for i in X]
    est = QuasiPolynomialFitter().fit(X, y)
    assert est.degree_ == 1
    assert est.predict([20, 21]).tolist() == [11.0, 1.0]
    assert est.score(X, y) == 1.0


def test_fitter_params_and_clone():
    est = QuasiPolynomialFitter(period=3, max_degree=2)
    assert est.get_params() == {"period": 3, "max_degree": 2}
    assert clone(est).get_params() == est.get_params()


def test_fitter_validation():
    with pytest.raises(NotFittedError):
        QuasiPolynomialFitter().predict([1])
    with pytest.raises(ValueError):
        QuasiPolynomialFitter().fit([0, 2, 3], [1, 1, 1])
    with pytest.raises(ValueError):
        QuasiPolynomialFitter().fit([0.5, 1.5], [1, 1])
    est = QuasiPolynomialFitter().fit([0, 1, 2, 3], [1, 5, 2, 9])
    assert est.inconclusive_
    with pytest.raises(NotFittedError):
        est.predict([5])


def test_analyzer_on_codim_two_example():
    _, _, M = load("ci2_axy")
    est = SyzygyAnalyzer(steps=8).fit(M)
    assert est.betti_ == list(range(1, 10))
    assert est.complexity_ == 2
    table = est.transform()
    assert table.shape == (9, 6)
    assert table[:, 2].tolist() == [2 * i + 1 for i in range(9)]


def test_analyzer_rejects_non_presentations():
    with pytest.raises(TypeError):
        SyzygyAnalyzer().fit([[1, 2]])
