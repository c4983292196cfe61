"""Hilbert series, Hilbert coefficients and a Groebner-free dimension oracle.

Two series are attached to a presentation M:

* the graded series ``H_M(z) = sum dim_k M_d z^d`` (:func:`hilbert_series`),
  read off the lead terms of a Groebner basis;
* the m-adic series of the associated graded module
  ``G(M) = ⊕ m^n M / m^{n+1} M`` (:func:`samuel_data`), which is what the
  Hilbert coefficients e_i and the Hilbert-Samuel function refer to.

When M is generated in a single degree t, G(M) is M(t). In general, with
U_t the submodule generated in degrees <= t, G(M) ≅ ⊕_t (U_t/U_{t-1})(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .arith import UsageError, mono_mul, monomials_of_degree
from .cring import Presentation, minimalize, submodule_presentation
from .series import (
    monomial_numerator,
    reduce_series,
    series_coefficient,
    zadd,
    zshift,
)


@dataclass(frozen=True)
class HilbertData:
    """H(z) = numerator / (1-z)^nvars = h / (1-z)^dim with h(1) != 0.

    ``dim`` is None for the zero module.
    """

    numerator: dict
    nvars: int
    dim: int | None
    h: dict
    e: tuple

    def is_zero(self) -> bool:
        return not self.numerator

    def dim_at(self, d: int) -> int:
        return series_coefficient(self.numerator, self.nvars, d)

    def h_coefficients(self) -> list:
        if not self.h:
            return []
        lo, hi = min(self.h), max(self.h)
        return [self.h.get(k, 0) for k in range(lo, hi + 1)]


def _derivative_at_one(h: dict, i: int) -> int:
    # h^(i)(1)/i! = sum_k h_k * C(k, i), with the falling-factorial form for k < 0
    total = 0
    for k, v in h.items():
        if k >= 0:
            total += v * comb(k, i)
        else:
            ff = 1
            for j in range(i):
                ff *= k - j
            total += v * ff // factorial(i)
    return total


def make_hilbert_data(numerator: dict, nvars: int) -> HilbertData:
    h, r = reduce_series(numerator, nvars)
    if r is None:
        return HilbertData({}, nvars, None, {}, ())
    e = tuple(_derivative_at_one(h, i) for i in range(r + 1))
    return HilbertData(dict(numerator), nvars, r, h, e)


def e_coefficient(H: HilbertData, i: int) -> int:
    """i-th Hilbert coefficient e_i = h^(i)(1)/i!."""
    if H.dim is None:
        raise UsageError("the zero module has no Hilbert coefficients")
    if not 0 <= i <= H.dim:
        raise UsageError(f"e_{i} requested but dim = {H.dim}")
    return H.e[i]


def e_from_h(h: dict, i: int) -> int:
    return _derivative_at_one(h, i)


def hilbert_series(M: Presentation) -> HilbertData:
    """Graded Hilbert series of coker(M) from the lead-term module of its basis."""
    nv = M.ring.nvars
    if M.rank == 0:
        return make_hilbert_data({}, nv)
    leads = M.gb.lead_monomials()
    num: dict = {}
    for i, a in enumerate(M.shifts):
        num = zadd(num, zshift(monomial_numerator(leads[i], nv), a))
    return make_hilbert_data(num, nv)


def graded_dims(M: Presentation, degrees) -> list:
    H = hilbert_series(M)
    return [H.dim_at(d) for d in degrees]


def associated_graded(M: Presentation) -> list:
    """Pieces (t, V_t) with G(M) ≅ ⊕ V_t(t); each V_t minimal, generated in degree t."""
    if M.rank == 0:
        return []
    tops = sorted(set(M.shifts))
    if len(tops) == 1:
        return [(tops[0], M)]
    out = []
    for t in tops:
        lower = [{(i, (0,) * M.ring.nvars): 1} for i, a in enumerate(M.shifts) if a < t]
        here = [{(i, (0,) * M.ring.nvars): 1} for i, a in enumerate(M.shifts) if a == t]
        V = minimalize(submodule_presentation(M.with_relations(lower), here))
        if V.rank:
            out.append((t, V))
    return out


def samuel_data(M: Presentation) -> HilbertData:
    """Hilbert data of G(M): the m-adic Hilbert series, its h-polynomial and e_i."""
    nv = M.ring.nvars
    num: dict = {}
    for t, V in associated_graded(M):
        num = zadd(num, zshift(hilbert_series(V).numerator, -t))
    return make_hilbert_data(num, nv)


def hilbert_samuel(M: Presentation, n: int) -> int:
    """Length of M / m^{n+1} M."""
    if n < 0:
        raise UsageError("n must be >= 0")
    H = samuel_data(M)
    return sum(H.dim_at(k) for k in range(n + 1))


def samuel_coefficients(H: HilbertData, r: int) -> tuple:
    """e_0..e_r of the Hilbert-Samuel polynomial written in the degree-r binomial basis.

    For dim M = s < r the leading r - s coefficients vanish and the rest are
    (-1)^(r-s) times the usual ones; this keeps e_j additive along exact
    sequences whose terms have different dimensions.
    """
    if H.dim is None:
        return (0,) * (r + 1)
    s = H.dim
    if s > r:
        raise UsageError(f"module of dimension {s} exceeds r = {r}")
    k = r - s
    sign = -1 if k % 2 else 1
    return tuple(0 if j < k else sign * H.e[j - k] for j in range(r + 1))


def samuel_polynomial(H: HilbertData, n: int) -> int:
    """P_M(n) = sum_i (-1)^i e_i C(n + r - i, r - i)."""
    if H.dim is None:
        return 0
    r = H.dim
    return sum((-1) ** i * H.e[i] * comb(n + r - i, r - i) for i in range(r + 1))


# ---------------------------------------------------------------------------
# dense oracle


def _eliminate(A: np.ndarray, p: int, reduced: bool):
    """Row echelon form of ``A`` mod p in place; returns pivot columns."""
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = A[:, c].copy()
        others[r] = 0
        if not reduced:
            others[:r] = 0
        nzb = np.nonzero(others)[0]
        if nzb.size:
            A[nzb] = (A[nzb] - np.outer(others[nzb], A[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def rank_mod_p(rows, p: int) -> int:
    """Rank over GF(p) of an integer matrix by Gaussian elimination."""
    A = np.array(rows, dtype=np.int64) % p
    if A.size == 0:
        return 0
    return len(_eliminate(A, p, reduced=False))


class DenseQuotient:
    """Coordinates on A_e = Q_e / (f)_e from a dense reduced echelon form of (f)_e.

    Only linear algebra is used, no Groebner bases.
    """

    def __init__(self, ring):
        self.ring = ring
        self._cache: dict = {}

    def degree(self, e: int):
        """(monomial index, basis positions, echelon rows, pivot positions) for degree e."""
        hit = self._cache.get(e)
        if hit is not None:
            return hit
        nv, p = self.ring.nvars, self.ring.p
        monos = monomials_of_degree(nv, e)
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for g in self.ring.f:
            dg = sum(next(iter(g)))
            for m in monomials_of_degree(nv, e - dg):
                row = np.zeros(len(monos), dtype=np.int64)
                for mm, c in g.items():
                    row[index[mono_mul(m, mm)]] = c
                rows.append(row)
        if rows:
            R = np.array(rows, dtype=np.int64) % p
            piv = _eliminate(R, p, reduced=True)
            R = R[: len(piv)]
        else:
            R = np.zeros((0, len(monos)), dtype=np.int64)
            piv = []
        basis = [k for k in range(len(monos)) if k not in set(piv)]
        hit = (index, basis, R, piv)
        self._cache[e] = hit
        return hit

    def dim(self, e: int) -> int:
        return len(self.degree(e)[1]) if e >= 0 else 0

    def project(self, vectors, shifts, d: int) -> np.ndarray:
        """Rows: A-coordinates in (⊕ A(-shifts))_d of the given homogeneous Q-vectors."""
        p = self.ring.p
        blocks = []
        for a in shifts:
            blocks.append(self.degree(d - a) if d - a >= 0 else None)
        width = [len(b[1]) if b else 0 for b in blocks]
        offs = np.cumsum([0] + width)
        out = np.zeros((len(vectors), int(offs[-1])), dtype=np.int64)
        for i, blk in enumerate(blocks):
            if blk is None or width[i] == 0:
                continue
            index, basis, R, piv = blk
            X = np.zeros((len(vectors), len(index)), dtype=np.int64)
            for r, v in enumerate(vectors):
                for (comp, m), c in v.items():
                    if comp == i:
                        X[r, index[m]] = c
            if len(piv):
                X = (X - (X[:, piv] @ R) % p) % p
            out[:, offs[i] : offs[i + 1]] = X[:, basis]
        return out


_QUOTIENTS: dict = {}


def dense_quotient(ring) -> DenseQuotient:
    q = _QUOTIENTS.get(ring)
    if q is None:
        q = _QUOTIENTS[ring] = DenseQuotient(ring)
    return q


def _multiples(gens, shifts, nvars: int, d: int) -> list:
    out = []
    for g in gens:
        if not g:
            continue
        comp, m0 = next(iter(g))
        deg = sum(m0) + shifts[comp]
        for m in monomials_of_degree(nvars, d - deg):
            out.append({(i, mono_mul(m, mm)): c for (i, mm), c in g.items()})
    return out


def dense_free_dim(ring, shifts, d: int) -> int:
    """dim_k (⊕ A(-shifts))_d."""
    q = dense_quotient(ring)
    return sum(q.dim(d - a) for a in shifts)


def dense_span_dim(ring, gens, shifts, d: int) -> int:
    """dim_k of the degree-d part of the A-submodule generated by ``gens``."""
    vecs = _multiples(gens, shifts, ring.nvars, d)
    if not vecs:
        return 0
    X = dense_quotient(ring).project(vecs, shifts, d)
    if X.shape[1] == 0:
        return 0
    return rank_mod_p(X, ring.p)


def oracle_dim(M: Presentation, n: int) -> int:
    """dim_k coker(M)_n without Groebner bases: size of the degree-n basis minus a dense rank."""
    return dense_free_dim(M.ring, M.shifts, n) - dense_span_dim(M.ring, M.relations, M.shifts, n)


def oracle_samuel(M: Presentation, n: int) -> int:
    """Length of M / m^{n+1} M from dense ranks only.

    In degree d the summands with d - a_i > n lie in m^{n+1}F, so the quotient
    there is the low part of F_d modulo the low projection of the relations.
    """
    if n < 0:
        raise UsageError("n must be >= 0")
    if M.rank == 0:
        return 0
    ring, shifts = M.ring, M.shifts
    total = 0
    for d in range(min(shifts), max(shifts) + n + 1):
        low = {i for i, a in enumerate(shifts) if 0 <= d - a <= n}
        if not low:
            continue
        free = sum(dense_quotient(ring).dim(d - shifts[i]) for i in low)
        vecs = []
        for v in _multiples(M.relations, shifts, ring.nvars, d):
            w = {k: c for k, c in v.items() if k[0] in low}
            if w:
                vecs.append(w)
        rank = 0
        if vecs:
            X = dense_quotient(ring).project(vecs, shifts, d)
            rank = rank_mod_p(X, ring.p) if X.shape[1] else 0
        total += free - rank
    return total
