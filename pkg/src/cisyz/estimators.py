"""scikit-learn style wrappers: a quasi-polynomial regressor and a syzygy analyzer."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from .analysis import analyze
from .asymptotics import fit_quasi_polynomial
from .cring import Presentation


def _check_indices(X) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim == 2 and X.shape[1] == 1:
        X = X[:, 0]
    if X.ndim != 1:
        raise ValueError("X must be a 1-d array of integer indices")
    if X.size and not np.all(np.equal(np.mod(X, 1), 0)):
        raise ValueError("indices must be integers")
    return X.astype(np.int64)


class QuasiPolynomialFitter(RegressorMixin, BaseEstimator):
    """Fit y_i = P_{i mod period}(i // period) on consecutive integer indices i.

    Fitted attributes: ``fit_`` (the QuasiPolyFit), ``degree_``, ``onset_``.
    """

    def __init__(self, period: int = 2, max_degree: int | None = None):
        self.period = period
        self.max_degree = max_degree

    def fit(self, X, y):
        X = _check_indices(X)
        y = np.asarray(y)
        if len(X) != len(y):
            raise ValueError("X and y have different lengths")
        if len(X) == 0:
            raise ValueError("empty input")
        order = np.argsort(X)
        X, y = X[order], y[order]
        if np.any(np.diff(X) != 1):
            raise ValueError("indices must be consecutive")
        self.fit_ = fit_quasi_polynomial([int(v) for v in y], int(X[0]), self.period, self.max_degree)
        self.degree_ = self.fit_.degree
        self.onset_ = self.fit_.onset
        self.inconclusive_ = self.fit_.inconclusive
        return self

    def predict_exact(self, X) -> list:
        check_is_fitted(self, "fit_")
        if self.fit_.inconclusive:
            raise NotFittedError("the fit was inconclusive; nothing to predict")
        return [self.fit_(int(i)) for i in _check_indices(X)]

    def predict(self, X) -> np.ndarray:
        return np.array([float(v) for v in self.predict_exact(X)])

    def leading_coefficients(self) -> tuple:
        check_is_fitted(self, "fit_")
        return tuple(Fraction(c) for c in self.fit_.leading)


class SyzygyAnalyzer(BaseEstimator):
    """Resolve a presentation and compute the per-step invariants and verdicts.

    ``fit`` takes a :class:`Presentation`; ``transform`` returns rows
    ``(i, beta, e0, e1, reg, mu)`` with reg = nan past the end of a finite resolution.
    """

    def __init__(self, steps: int = 12, seed: int = 0, trials: int = 20, with_operators: bool = True):
        self.steps = steps
        self.seed = seed
        self.trials = trials
        self.with_operators = with_operators

    def fit(self, M, y=None):
        if not isinstance(M, Presentation):
            raise TypeError("SyzygyAnalyzer.fit expects a Presentation")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        A = analyze(M, steps=self.steps, seed=self.seed, trials=self.trials, with_operators=self.with_operators)
        self.analysis_ = A
        self.resolution_ = A.resolution
        self.betti_ = [r.beta for r in A.rows]
        self.e0_ = [r.e[0] for r in A.rows]
        self.e1_ = [r.e[1] if len(r.e) > 1 else 0 for r in A.rows]
        self.reg_ = [r.reg for r in A.rows]
        self.complexity_ = A.cx
        self.verdicts_ = A.verdicts
        return self

    def transform(self, M=None) -> np.ndarray:
        check_is_fitted(self, "analysis_")
        out = []
        for r in self.analysis_.rows:
            e1 = r.e[1] if len(r.e) > 1 else 0
            reg = float("nan") if r.reg == float("-inf") else float(r.reg)
            out.append([r.i, r.beta, r.e[0], e1, reg, r.mu])
        return np.array(out, dtype=float)
