"""Eisenbud operators of a resolution over A = Q/(f) and the maps M_{n+2} -> M_n they induce.

Matrices are lists of columns; a column is a raw vector ``{(row, exp): coeff}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .arith import UsageError, matrix_apply, vec_degree
from .cring import Presentation, minimalize, submodule_presentation
from .groebner import buchberger, normal_form, syzygies_of
from .resolve import Resolution


class LiftingError(ArithmeticError):
    """The square of a lifted differential is not in f * F; signals a lifting bug."""


@dataclass
class LiftedResolution:
    """Differentials d~_1, ..., d~_{N+1} over Q, lifting those of ``base``.

    Entries of the A-differentials are normal forms mod (f), which serve as the lifts.
    """

    base: Resolution
    differentials: list

    @property
    def ring(self):
        return self.base.ring

    def shifts(self, i: int) -> tuple:
        mods = self.base.modules
        if i < len(mods):
            return mods[i].shifts
        if i == len(mods) and mods:
            return tuple(mods[-1].relation_degrees())
        return ()


def lift_resolution(R: Resolution) -> LiftedResolution:
    if R.length < 3 and not R.is_finite():
        raise UsageError(f"need at least 3 resolution steps to lift, got {R.length}")
    diffs = [R.differential(i) for i in range(1, len(R.modules) + 1)]
    return LiftedResolution(R, diffs)


@dataclass
class EisenbudOperators:
    """``lifted[i][j]`` is t~_j : F_i -> F_{i-2} over Q, ``reduced[i][j]`` its image over A."""

    lifted_resolution: LiftedResolution
    lifted: dict
    reduced: dict
    products: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.lifted_resolution.ring

    @property
    def steps(self) -> list:
        return sorted(self.lifted)


def operators(L: LiftedResolution) -> EisenbudOperators:
    """Write d~_{i-1} d~_i = sum_j f_j t~_j by division with quotient tracking."""
    ring = L.ring
    p, c = ring.p, ring.codim
    lifted: dict = {}
    reduced: dict = {}
    products: dict = {}
    D = L.differentials
    for i in range(2, len(D) + 1):
        outer, inner = D[i - 2], D[i - 1]
        ts = [[] for _ in range(c)]
        prods = []
        for col in inner:
            prod = matrix_apply(outer, col, p)
            prods.append(prod)
            entries: dict = {}
            for (r, m), x in prod.items():
                entries.setdefault(r, {})[m] = x
            cols = [{} for _ in range(c)]
            for r, h in entries.items():
                try:
                    qs = ring.lift(h)
                except ArithmeticError as exc:
                    raise LiftingError(f"step {i}: entry of d~^2 is not in (f)") from exc
                for j, q in enumerate(qs):
                    for m, x in q.items():
                        cols[j][(r, m)] = x
            for j in range(c):
                ts[j].append(cols[j])
        lifted[i] = ts
        reduced[i] = [[ring.reduce_vec(v) for v in t] for t in ts]
        products[i] = prods
    E = EisenbudOperators(L, lifted, reduced, products)
    bad = identity_defects(E)
    if bad:
        raise LiftingError(f"d~^2 != sum f_j t~_j at steps {bad}")
    return E


def identity_defects(E: EisenbudOperators) -> list:
    """Steps i where d~_{i-1} d~_i differs from sum_j f_j t~_j as a matrix over Q."""
    ring = E.ring
    p = ring.p
    bad = []
    for i in E.steps:
        for k, prod in enumerate(E.products[i]):
            total: dict = {}
            for j, g in enumerate(ring.f):
                for (r, m), x in E.lifted[i][j][k].items():
                    for mm, y in g.items():
                        key = (r, tuple(a + b for a, b in zip(m, mm)))
                        total[key] = (total.get(key, 0) + x * y) % p
            total = {key: x for key, x in total.items() if x}
            if total != prod:
                bad.append(i)
                break
    return bad


def _det_mod_p(rows, p: int) -> int:
    n = len(rows)
    A = [[x % p for x in r] for r in rows]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            if A[r][c]:
                k = A[r][c] * inv % p
                A[r] = [(a - k * b) % p for a, b in zip(A[r], A[c])]
    return det % p


def matrix_factorization_defects(E: EisenbudOperators, onset: int) -> list:
    """Hypersurface case: on steps i >= onset + 2, t~ must be square with an
    invertible degree-0 part (hence invertible over Q), so that
    (d~_{i-1}, d~_i t~^{-1}) is a matrix factorization of f.

    The identity d~_{i-1} d~_i = f t~ itself is checked by :func:`identity_defects`.
    """
    ring = E.ring
    if ring.codim != 1:
        raise UsageError("matrix factorizations need a hypersurface")
    L = E.lifted_resolution
    bad = []
    for i in E.steps:
        if i < onset + 2:
            continue
        n_src, n_tgt = len(L.shifts(i)), len(L.shifts(i - 2))
        if n_src == 0 and n_tgt == 0:
            continue
        t = E.lifted[i][0]
        if n_src != n_tgt:
            bad.append(i)
            continue
        rows = [[t[k].get((r, (0,) * ring.nvars), 0) for k in range(n_src)] for r in range(n_tgt)]
        if _det_mod_p(rows, ring.p) == 0:
            bad.append(i)
    return bad


@dataclass
class OperatorMap:
    """alpha = sum_j coeffs_j t_j : F_{n+2} -> F_n and the induced map M_{n+2} -> M_n."""

    n: int
    coeffs: tuple
    degree: int
    columns: list
    surjective: bool | None = None
    witness: int | None = None
    well_defined: bool | None = None
    kernel: Presentation | None = None
    seed: int | None = None
    trials_used: int = 0


def _alpha(E: EisenbudOperators, coeffs, n: int) -> tuple:
    ring = E.ring
    p = ring.p
    used = {ring.degrees[j] for j, x in enumerate(coeffs) if x % p}
    if len(used) > 1:
        raise UsageError("coefficients mix operators of different degrees; alpha would not be graded")
    deg = used.pop() if used else 0
    ts = E.reduced[n + 2]
    width = len(E.lifted_resolution.shifts(n + 2))
    cols = []
    for k in range(width):
        acc: dict = {}
        for j, x in enumerate(coeffs):
            x %= p
            if not x:
                continue
            for key, y in ts[j][k].items():
                acc[key] = (acc.get(key, 0) + x * y) % p
        cols.append({key: y for key, y in acc.items() if y})
    return cols, deg


def operator_map(E: EisenbudOperators, coeffs, n: int, *, with_kernel: bool = True) -> OperatorMap:
    """Build alpha at step n, decide surjectivity of M_{n+2} -> M_n, and compute its kernel."""
    ring = E.ring
    if len(coeffs) != ring.codim:
        raise UsageError(f"expected {ring.codim} coefficients, got {len(coeffs)}")
    if n < 0 or n + 2 not in E.lifted:
        raise UsageError(f"step n={n} is outside the computed window")
    if n + 2 >= len(E.lifted_resolution.base.modules):
        raise UsageError(f"M_{n + 2} is not part of the computed resolution")
    mods = E.lifted_resolution.base.modules
    Mn, Mn2 = mods[n], mods[n + 2]
    cols, deg = _alpha(E, coeffs, n)
    op = OperatorMap(n, tuple(x % ring.p for x in coeffs), deg, cols)
    p, one = ring.p, (0,) * ring.nvars

    if Mn.rank == 0:
        op.surjective = True
    else:
        G = buchberger([v for v in cols if v] + list(Mn.relations), Mn.rank, Mn.shifts, p,
                       background=Mn.background())
        op.surjective = True
        for i in range(Mn.rank):
            if normal_form({(i, one): 1}, G):
                op.surjective, op.witness = False, i
                break

    # alpha must send the relations of M_{n+2} into those of M_n
    if Mn.rank and Mn2.relations:
        op.well_defined = all(
            not normal_form(matrix_apply(cols, v, p), Mn.gb) for v in Mn2.relations
        )
    else:
        op.well_defined = True

    if op.surjective and with_kernel:
        op.kernel = _kernel(ring, cols, Mn, Mn2)
    return op


def _kernel(ring, cols, Mn: Presentation, Mn2: Presentation) -> Presentation:
    b = Mn2.rank
    if b == 0:
        return Presentation(ring, (), (), minimal=True)
    if Mn.rank == 0:
        vecs = [{(k, (0,) * ring.nvars): 1} for k in range(b)]
    else:
        # columns of alpha may vanish; keep their positions as zero placeholders
        gens = [v if v else None for v in cols]
        live = [k for k, v in enumerate(gens) if v is not None]
        dead = [k for k, v in enumerate(gens) if v is None]
        vecs = [{(k, (0,) * ring.nvars): 1} for k in dead]
        if live:
            allg = [cols[k] for k in live] + Mn.q_generators()
            syz, _ = syzygies_of(allg, Mn.rank, Mn.shifts, ring.p)
            s = len(live)
            for c in syz:
                w = {(live[k], m): x for (k, m), x in c.items() if k < s}
                if w:
                    vecs.append(w)
    vecs = [v for v in vecs if vec_degree(v, Mn2.shifts) is not None]
    return minimalize(submodule_presentation(Mn2, vecs))


def scan_operator(E: EisenbudOperators, n: int, trials: int = 20, seed: int = 0) -> OperatorMap:
    """Try random alpha = sum c_j t_j until M_{n+2} -> M_n is onto.

    Coefficients are drawn from a seeded generator, one degree class of
    operators at a time so that alpha stays homogeneous. If no trial
    succeeds, the last attempt is returned with ``surjective=False``.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    ring = E.ring
    rng = random.Random(seed)
    groups: dict = {}
    for j, d in enumerate(ring.degrees):
        groups.setdefault(d, []).append(j)
    classes = [groups[d] for d in sorted(groups)]
    last = None
    for k in range(trials):
        idx = classes[k % len(classes)]
        coeffs = [0] * ring.codim
        for j in idx:
            coeffs[j] = rng.randrange(1, ring.p)
        op = operator_map(E, coeffs, n, with_kernel=False)
        op.seed, op.trials_used = seed, k + 1
        last = op
        if op.surjective:
            Mn = E.lifted_resolution.base.modules[n]
            Mn2 = E.lifted_resolution.base.modules[n + 2]
            op.kernel = _kernel(ring, op.columns, Mn, Mn2)
            return op
    return last


def kernel_dimension_defects(op: OperatorMap, M_source: Presentation, M_target: Presentation,
                             degree_bound: int = 12) -> list:
    """Degrees d where dim (K)_d != dim (M_{n+2})_d - dim (M_n)_{d - deg alpha}.

    All three dimensions come from the dense oracle; d runs from the least
    generator degree of M_{n+2} through ``degree_bound`` more degrees.
    """
    from .hilbert import oracle_dim

    if op.kernel is None:
        raise UsageError("kernel not computed")
    if M_source.rank == 0:
        return []
    base = min(M_source.shifts)
    bad = []
    for d in range(base, base + degree_bound + 1):
        k = oracle_dim(op.kernel, d) if op.kernel.rank else 0
        a = oracle_dim(M_source, d)
        b = oracle_dim(M_target, d - op.degree) if M_target.rank else 0
        if k != a - b:
            bad.append(d)
    return bad


__all__ = [
    "EisenbudOperators",
    "LiftedResolution",
    "LiftingError",
    "OperatorMap",
    "identity_defects",
    "kernel_dimension_defects",
    "lift_resolution",
    "matrix_factorization_defects",
    "operator_map",
    "operators",
    "scan_operator",
]
