"""Graded complete intersections A = Q/(f_1..f_c) and module presentations over A.

An A-module is stored as a presentation over Q: a graded free module
``⊕ Q(-shifts[i])`` and homogeneous relation columns. The A-structure is
realised by adjoining ``f_j * e_i`` for every basis vector whenever a Groebner
basis is needed (see :meth:`Presentation.background`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .arith import (
    ModuleElement,
    PolyRing,
    Polynomial,
    UsageError,
    Vec,
    format_poly,
    p_is_homogeneous,
    pdegree,
    vadd_scaled,
    vec_degree,
    vec_from_polys,
    vec_is_homogeneous,
    vec_scale,
)
from .groebner import GroebnerBasis, ModuleOrder, buchberger, minimal_generators, normal_form, syzygies_of
from .series import monomial_numerator, one_minus_z_power, zmul


class NotRegularSequence(UsageError):
    """The relations of a would-be complete intersection are not a regular sequence."""

    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class CIRing:
    """A = Q/(f) with f a homogeneous Q-regular sequence of forms of degree >= 2.

    Use :func:`make_ring` to build one; it verifies the regular-sequence
    property through the Hilbert series.
    """

    def __init__(self, Q: PolyRing, f, *, _verified=False):
        self.Q = Q
        self.f = tuple(dict(g) for g in f)
        self.degrees = tuple(pdegree(g) for g in self.f)
        if not _verified:
            _validate(Q, self.f)

    @property
    def p(self) -> int:
        return self.Q.p

    @property
    def nvars(self) -> int:
        return self.Q.nvars

    @property
    def codim(self) -> int:
        return len(self.f)

    @property
    def dim(self) -> int:
        return self.nvars - self.codim

    @cached_property
    def ideal_gb(self) -> GroebnerBasis:
        """Groebner basis of (f) as a submodule of Q^1."""
        return buchberger([{(0, m): c for m, c in g.items()} for g in self.f], 1, (0,), self.p)

    @cached_property
    def _lift_gb(self) -> GroebnerBasis:
        # rows (f_j | e_j) in Q^(1+c); component 0 dominates, so normal forms of
        # (h, 0, ..., 0) for h in (f) come out as (0, -t_1, ..., -t_c)
        c = self.codim
        rows = []
        for j, g in enumerate(self.f):
            v = {(0, m): x for m, x in g.items()}
            v[(j + 1, (0,) * self.nvars)] = 1
            rows.append(v)
        return buchberger(rows, 1 + c, (0,) + self.degrees, self.p)

    def reduce(self, g: dict) -> dict:
        """Normal form of a polynomial modulo (f)."""
        if not self.f or not g:
            return dict(g)
        r = normal_form({(0, m): c for m, c in g.items()}, self.ideal_gb)
        return {m: c for (_, m), c in r.items()}

    def reduce_vec(self, v: Vec) -> Vec:
        if not self.f or not v:
            return dict(v)
        comps: dict = {}
        for (i, m), c in v.items():
            comps.setdefault(i, {})[m] = c
        out: Vec = {}
        for i, g in comps.items():
            for m, c in self.reduce(g).items():
                out[(i, m)] = c
        return out

    def lift(self, h: dict) -> list:
        """Coefficients t with h = sum t_j f_j; raises if h is not in (f)."""
        c = self.codim
        if not h:
            return [{} for _ in range(c)]
        if c == 0:
            raise ArithmeticError("nonzero element is not in the zero ideal")
        r = normal_form({(0, m): x for m, x in h.items()}, self._lift_gb)
        if any(comp == 0 for comp, _ in r):
            raise ArithmeticError("element does not lie in the ideal (f)")
        out = [{} for _ in range(c)]
        p = self.p
        for (comp, m), x in r.items():
            out[comp - 1][m] = (-x) % p
        return out

    def background(self, shifts) -> list:
        """The vectors f_j e_i spanning f * (⊕ Q(-shifts))."""
        out = []
        for i in range(len(shifts)):
            for g in self.f:
                out.append({(i, m): c for m, c in g.items()})
        return out

    def hilbert_numerator(self) -> dict:
        """Numerator of H_A over (1 - z)^nvars, read off the Groebner basis of (f)."""
        if not self.f:
            return {0: 1}
        return monomial_numerator([m for _, m in self.ideal_gb.leads], self.nvars)

    def expected_numerator(self) -> dict:
        out = {0: 1}
        for d in self.degrees:
            out = zmul(out, {0: 1, d: -1})
        return out

    def polys(self) -> list:
        return [Polynomial(self.Q, g) for g in self.f]

    def __repr__(self):
        rel = ", ".join(format_poly(g, self.Q.variables) for g in self.f)
        return f"CIRing(GF({self.p})[{','.join(self.Q.variables)}]/({rel}))"

    def __eq__(self, other):
        return isinstance(other, CIRing) and self.Q == other.Q and self.f == other.f

    def __hash__(self):
        return hash((self.Q, tuple(frozenset(g.items()) for g in self.f)))


def _validate(Q: PolyRing, f) -> None:
    for g in f:
        if not g:
            raise UsageError("zero relation in a complete intersection")
        if not p_is_homogeneous(g):
            raise UsageError(f"relation {format_poly(g, Q.variables)} is not homogeneous")
        if pdegree(g) < 2:
            raise UsageError(f"relation {format_poly(g, Q.variables)} has degree < 2")


def make_ring(Q: PolyRing, f) -> CIRing:
    """Build A = Q/(f) after checking that f is a regular sequence.

    The check compares the Hilbert numerator of Q/(f) with
    prod(1 - z^deg f_j); they agree iff f is Q-regular.
    """
    raw = []
    for g in f:
        if isinstance(g, str):
            g = Q.parse(g)
        if isinstance(g, Polynomial):
            if g.ring != Q:
                raise UsageError("relation from a different ring")
            g = g.raw
        raw.append({m: c % Q.p for m, c in g.items() if c % Q.p})
    _validate(Q, raw)
    ring = CIRing(Q, raw, _verified=True)
    got, want = ring.hilbert_numerator(), ring.expected_numerator()
    if got != want:
        raise NotRegularSequence(
            f"relations are not a regular sequence: Hilbert numerator {got} != {want}",
            {"numerator": got, "expected": want},
        )
    return ring


def polynomial_ring(Q: PolyRing) -> CIRing:
    """Q itself, as a complete intersection of codimension 0."""
    return CIRing(Q, (), _verified=True)


@dataclass(eq=False)
class Presentation:
    """coker( ⊕ A(-deg col) --relations--> ⊕ A(-shifts[i]) )."""

    ring: CIRing
    shifts: tuple
    relations: tuple
    minimal: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    @property
    def p(self) -> int:
        return self.ring.p

    def relation_degrees(self) -> list:
        return [vec_degree(v, self.shifts) for v in self.relations]

    def background(self) -> list:
        return self.ring.background(self.shifts)

    def q_generators(self) -> list:
        """Relations plus f-multiples: the Q-submodule whose cokernel is M."""
        return list(self.relations) + self.background()

    @cached_property
    def gb(self) -> GroebnerBasis:
        return buchberger(self.q_generators(), self.rank, self.shifts, self.p)

    def is_zero(self) -> bool:
        if self.rank == 0:
            return True
        return all(not normal_form({(i, (0,) * self.ring.nvars): 1}, self.gb) for i in range(self.rank))

    def with_relations(self, extra) -> Presentation:
        return Presentation(self.ring, self.shifts, tuple(self.relations) + tuple(extra))

    def columns(self) -> list:
        """Relations as :class:`ModuleElement` objects."""
        return [ModuleElement.from_vec(self.ring.Q, v, self.shifts) for v in self.relations]

    def matrix(self) -> list:
        """Rows x columns list of polynomial strings."""
        cols = [[{} for _ in range(self.rank)] for _ in self.relations]
        for j, v in enumerate(self.relations):
            for (i, m), c in v.items():
                cols[j][i][m] = c
        names = self.ring.Q.variables
        return [[format_poly(cols[j][i], names) for j in range(len(cols))] for i in range(self.rank)]

    def canonical(self) -> tuple:
        """Hashable form used for periodicity detection (shift-free)."""
        return tuple(tuple(sorted(v.items())) for v in self.relations)

    def __repr__(self):
        return f"Presentation(rank={self.rank}, shifts={self.shifts}, relations={len(self.relations)})"


def _as_vec(ring: CIRing, col, shifts) -> Vec:
    if isinstance(col, ModuleElement):
        return col.to_vec()
    if isinstance(col, dict):
        return {k: c % ring.p for k, c in col.items() if c % ring.p}
    polys = []
    if len(col) != len(shifts):
        raise UsageError(f"relation has {len(col)} entries, ambient rank is {len(shifts)}")
    for entry in col:
        if isinstance(entry, str):
            entry = ring.Q.parse(entry)
        elif isinstance(entry, int):
            entry = ring.Q.constant(entry)
        if isinstance(entry, Polynomial):
            entry = entry.raw
        polys.append(entry)
    return vec_from_polys(polys, ring.p)


def present(ring: CIRing, rank: int, shifts=None, columns=()) -> Presentation:
    """Store a presentation; entries are reduced mod (f), nothing is minimalized."""
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    if len(shifts) != rank:
        raise UsageError("need one shift per generator")
    rels = []
    for col in columns:
        v = _as_vec(ring, col, shifts)
        if not vec_is_homogeneous(v, shifts):
            raise UsageError("relation column is not homogeneous for the given shifts")
        v = ring.reduce_vec(v)
        if v:
            rels.append(v)
    return Presentation(ring, shifts, tuple(rels))


def _monic(v: Vec, order: ModuleOrder, p: int) -> Vec:
    lead = order.lead(v)
    return vec_scale(v, pow(v[lead], -1, p), p)


def _sorted_columns(rels, shifts, order) -> list:
    return sorted(rels, key=lambda v: (vec_degree(v, shifts), [order.key(t) for t in sorted(v, key=order.key, reverse=True)]))


def minimalize(P: Presentation) -> Presentation:
    """Minimal presentation of coker(P).

    Unit entries are pivoted away (each removes a redundant generator and
    its relation), then a minimal generating set of the relations is kept.
    The result has no degree-0 relation entries and rank mu(coker).
    """
    ring = P.ring
    p = ring.p
    nv = ring.nvars
    one = (0,) * nv
    shifts = list(P.shifts)
    rels = [ring.reduce_vec(v) for v in P.relations]
    rels = [v for v in rels if v]
    while True:
        pivot = None
        for j, v in enumerate(rels):
            rows = sorted(i for (i, m) in v if m == one)
            if rows:
                pivot = (j, rows[0])
                break
        if pivot is None:
            break
        j, r = pivot
        col = rels[j]
        u_inv = pow(col[(r, one)], -1, p)
        new = []
        for k, v in enumerate(rels):
            if k == j:
                continue
            entry = {m: c for (i, m), c in v.items() if i == r}
            w = dict(v)
            for m, c in entry.items():
                vadd_scaled(w, -c * u_inv, m, col, p)
            new.append(w)
        keep = [i for i in range(len(shifts)) if i != r]
        remap = {old: newi for newi, old in enumerate(keep)}
        rels = []
        for w in new:
            w = ring.reduce_vec({(remap[i], m): c for (i, m), c in w.items() if i != r})
            if w:
                rels.append(w)
        shifts = [shifts[i] for i in keep]
    shifts = tuple(shifts)
    order = ModuleOrder(len(shifts), shifts)
    if rels:
        rels = minimal_generators(rels, len(shifts), shifts, p, background=ring.background(shifts))
        rels = [ring.reduce_vec(v) for v in rels]
        rels = [_monic(v, order, p) for v in rels if v]
        rels = _sorted_columns(rels, shifts, order)
    return Presentation(ring, shifts, tuple(rels), minimal=True, meta=dict(P.meta))


def submodule_presentation(P: Presentation, vectors) -> Presentation:
    """Presentation of the A-submodule of coker(P) generated by ``vectors``.

    The result is not minimalized.
    """
    ring = P.ring
    vectors = [ring.reduce_vec(v) for v in vectors]
    vectors = [v for v in vectors if v]
    if not vectors:
        return Presentation(ring, (), ())
    src = tuple(vec_degree(v, P.shifts) for v in vectors)
    s = len(vectors)
    gens = vectors + P.q_generators()
    cols, _ = syzygies_of(gens, P.rank, P.shifts, P.p)
    rels = []
    for c in cols:
        w = {(k, m): x for (k, m), x in c.items() if k < s}
        w = ring.reduce_vec(w)
        if w:
            rels.append(w)
    return Presentation(ring, src, tuple(rels))


def kernel_presentation(P: Presentation) -> Presentation:
    """Presentation of the first syzygy module: the image of the relations.

    Ambient generators correspond to the relation columns of ``P`` in order.
    """
    return submodule_presentation(Presentation(P.ring, P.shifts, ()), P.relations)


def mcm_check(M: Presentation, retries: int = 5, seed: int = 0):
    """Is M maximal Cohen-Macaulay? Returns True, False or None (not verified).

    dim M must equal dim A, and some sequence of dim A random linear forms must
    be M-regular; a linear form l is regular on N iff H(N/lN) = (1 - z) H(N).
    """
    from .hilbert import hilbert_series

    A = M.ring
    H = hilbert_series(M)
    if H.dim is None or H.dim != A.dim:
        return False
    d = A.dim
    if d == 0:
        return True
    rng = random.Random(seed)
    n = A.nvars
    for _ in range(retries):
        N = M
        num = H.numerator
        ok = True
        for _k in range(d):
            coeffs = [rng.randrange(A.p) for _ in range(n)]
            lin = {tuple(1 if v == i else 0 for v in range(n)): c for i, c in enumerate(coeffs) if c}
            extra = [{(i, m): c for m, c in lin.items()} for i in range(N.rank)]
            N2 = N.with_relations(extra)
            num2 = hilbert_series(N2).numerator
            if num2 != zmul(num, one_minus_z_power(1)):
                ok = False
                break
            N, num = N2, num2
        if ok:
            return True
    return None
