"""Minimal graded free resolutions over A and Q, Betti tables, regularity."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .arith import matrix_apply
from .cring import CIRing, Presentation, kernel_presentation, minimalize, polynomial_ring
from .hilbert import associated_graded, dense_quotient, dense_span_dim, rank_mod_p

NEG_INF = -math.inf


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Resolution:
    """F_N -> ... -> F_1 -> F_0 -> M -> 0.

    ``modules[i]`` is the minimal presentation of M_i = Syz_i(M): its ambient
    is F_i and its relation columns are the differential d_{i+1}: F_{i+1} -> F_i.
    """

    ring: CIRing
    modules: list
    over: str = "A"
    truncated: bool = False
    reason: str = ""
    period_onset: int | None = None
    degree_period_onset: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def betti(self) -> list:
        return [P.rank for P in self.modules]

    @property
    def graded_betti(self) -> list:
        return [sorted(P.shifts) for P in self.modules]

    def differential(self, i: int) -> list:
        """Columns of d_i: F_i -> F_{i-1}, for 1 <= i <= length + 1."""
        return list(self.modules[i - 1].relations)

    def is_finite(self) -> bool:
        return bool(self.modules) and self.modules[-1].rank == 0

    def betti_table(self) -> dict:
        """{(i, j): beta_{i, i+j}} in Macaulay2 layout."""
        out: dict = {}
        for i, P in enumerate(self.modules):
            for a in P.shifts:
                out[(i, a - i)] = out.get((i, a - i), 0) + 1
        return out


def next_syzygy(M: Presentation) -> Presentation:
    """Minimal presentation of Syz_1(coker M); its generators are M's relation columns."""
    if not M.relations:
        return Presentation(M.ring, (), (), minimal=True)
    K = minimalize(kernel_presentation(M))
    if K.rank != len(M.relations):
        raise AssertionError("relations of the input were not minimal")
    return K


def detect_period(modules) -> int | None:
    n = len(modules)
    onset = None
    for i in range(n - 3, -1, -1):
        a, b = modules[i], modules[i + 2]
        diffs = {y - x for x, y in zip(a.shifts, b.shifts)}
        if a.rank == b.rank and a.rank > 0 and len(diffs) <= 1 and a.canonical() == b.canonical():
            onset = i
        else:
            break
    if onset is not None and n - onset < 4:
        return None
    return onset


def detect_degree_period(modules) -> int | None:
    # graded Betti degrees of F_{i+2} are those of F_i moved by one constant
    n = len(modules)
    onset = None
    for i in range(n - 3, -1, -1):
        a, b = sorted(modules[i].shifts), sorted(modules[i + 2].shifts)
        diffs = {y - x for x, y in zip(a, b)}
        if len(a) == len(b) and a and len(diffs) == 1:
            onset = i
        else:
            break
    if onset is not None and n - onset < 4:
        return None
    return onset


def resolve(M: Presentation, steps: int = 12, budget: float | None = None) -> Resolution:
    """Resolve M over its ring through ``steps`` syzygies (fewer if it ends).

    With ``budget`` seconds, a partial resolution is returned and marked
    ``truncated`` once the budget runs out.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    start = time.monotonic()
    cur = minimalize(M)
    mods = [cur]
    truncated, reason = False, ""
    for _ in range(steps):
        if cur.rank == 0:
            break
        if budget is not None and time.monotonic() - start > budget:
            truncated, reason = True, f"budget of {budget}s exceeded after {len(mods) - 1} steps"
            break
        cur = next_syzygy(cur)
        mods.append(cur)
    R = Resolution(M.ring, mods, over="A" if M.ring.codim else "Q", truncated=truncated, reason=reason)
    R.period_onset = detect_period(mods)
    R.degree_period_onset = detect_degree_period(mods)
    return R


def q_resolution(M: Presentation) -> Resolution:
    """Finite minimal free resolution of coker(M) viewed as a Q-module."""
    Qring = polynomial_ring(M.ring.Q)
    P = Presentation(Qring, M.shifts, tuple(M.q_generators()))
    return resolve(P, steps=M.ring.nvars + 1)


def regularity(M: Presentation) -> float:
    """Castelnuovo-Mumford regularity max_i (max degree of F_i - i); -inf for 0."""
    R = q_resolution(M)
    reg = NEG_INF
    for i, P in enumerate(R.modules):
        if P.rank:
            reg = max(reg, max(P.shifts) - i)
    return reg


def regularity_associated_graded(M: Presentation) -> float:
    """reg G(M), using G(M) ≅ ⊕ V_t(t)."""
    reg = NEG_INF
    for t, V in associated_graded(M):
        reg = max(reg, regularity(V) - t)
    return reg


# ---------------------------------------------------------------------------
# soundness checks


def composition_defects(R: Resolution) -> list:
    """Indices i with d_i d_{i+1} != 0 over A."""
    bad = []
    ring = R.ring
    for i in range(1, len(R.modules)):
        di = R.differential(i)
        for col in R.differential(i + 1):
            if ring.reduce_vec(matrix_apply(di, col, ring.p)):
                bad.append(i)
                break
    return bad


def minimality_defects(R: Resolution) -> list:
    """(i, column) pairs where d_i has a degree-0 entry."""
    out = []
    for i in range(1, len(R.modules) + 1):
        for j, col in enumerate(R.differential(i)):
            if any(not any(m) for _, m in col):
                out.append((i, j))
    return out


def _kernel_dim(ring, src_shifts, tgt_shifts, columns, d) -> int:
    # dim ker(F_d -> G_d) over A, F = ⊕A(-src), G = ⊕A(-tgt); dense linear algebra only
    q = dense_quotient(ring)
    images = []
    for i, a in enumerate(src_shifts):
        if d - a < 0:
            continue
        index, basis, _, _ = q.degree(d - a)
        monos = list(index)
        for k in basis:
            images.append(matrix_apply(columns, {(i, monos[k]): 1}, ring.p))
    if not images:
        return 0
    X = q.project(images, tgt_shifts, d)
    rank = rank_mod_p(X, ring.p) if X.shape[1] else 0
    return len(images) - rank


def exactness_defects(R: Resolution, degree_bound: int = 12) -> list:
    """(i, d) where ker d_i != im d_{i+1} in degree d, for d from the least
    generator degree of F_i through ``degree_bound`` more degrees.

    Both sides are computed by dense ranks, independently of Groebner bases.
    """
    out = []
    ring = R.ring
    for i in range(1, len(R.modules)):
        Fi = R.modules[i].shifts
        Fim1 = R.modules[i - 1].shifts
        if not Fi:
            continue
        di = R.differential(i)
        di1 = R.differential(i + 1)
        base = min(Fi)
        for d in range(base, base + degree_bound + 1):
            ker = _kernel_dim(ring, Fi, Fim1, di, d)
            im = dense_span_dim(ring, di1, Fi, d)
            if ker != im:
                out.append((i, d))
    return out
