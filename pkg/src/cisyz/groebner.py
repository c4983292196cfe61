"""Buchberger's algorithm and Schreyer syzygies for graded submodules of Q^r.

Module elements are raw vectors ``{(component, exponents): coeff}``. The module
order is position-over-term over degrevlex, with a smaller component index
ranking higher. Inputs must be homogeneous; pairs are processed degree by
degree (normal strategy), which lets one pass also pick out a minimal
generating set of the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import (
    UsageError,
    Vec,
    degrevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    vadd_scaled,
    vec_degree,
    vec_is_homogeneous,
    vec_scale,
)


class ModuleOrder:
    """Position-over-term order on ``Q^rank``; keys are cached."""

    def __init__(self, rank: int, shifts):
        self.rank = rank
        self.shifts = tuple(shifts)
        self._cache: dict = {}

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            k = (-term[0], degrevlex_key(term[1]))
            self._cache[term] = k
        return k

    def lead(self, v: Vec):
        return max(v, key=self.key)

    def describe(self) -> str:
        return "position-over-term/degrevlex"


@dataclass
class GroebnerBasis:
    generators: list
    leads: list
    rank: int
    shifts: tuple
    p: int
    order: ModuleOrder
    cofactors: list | None = None
    minimal_inputs: list = field(default_factory=list)
    minimal_elements: list = field(default_factory=list)

    def __post_init__(self):
        self._by_comp: dict = {}
        for idx, (comp, m) in enumerate(self.leads):
            self._by_comp.setdefault(comp, []).append((m, idx))

    def __len__(self):
        return len(self.generators)

    def reducer(self, comp, m):
        for gm, idx in self._by_comp.get(comp, ()):
            if mono_divides(gm, m):
                return idx
        return None

    def degrees(self) -> list:
        return [vec_degree(g, self.shifts) for g in self.generators]

    def lead_monomials(self) -> dict:
        """Component -> list of lead exponents (a monomial ideal per component)."""
        out: dict = {i: [] for i in range(self.rank)}
        for comp, m in self.leads:
            out[comp].append(m)
        return out


def _reduce(v: Vec, G: GroebnerBasis, *, full=True, quotients=None, cof=None, cofs=None) -> Vec:
    """Reduce ``v`` by the (monic) elements of ``G``.

    ``quotients`` (dict idx -> Vec-like poly dict) collects the division
    quotients; ``cof``/``cofs`` carry cofactor vectors along.
    """
    p = G.p
    key = G.order.key
    v = dict(v)
    rem: Vec = {}
    while v:
        lead = max(v, key=key)
        c = v[lead]
        idx = G.reducer(*lead)
        if idx is None:
            if not full:
                rem.update(v)
                return rem
            rem[lead] = c
            del v[lead]
            continue
        t = mono_div(lead[1], G.leads[idx][1])
        vadd_scaled(v, -c, t, G.generators[idx], p)
        if quotients is not None:
            q = quotients.setdefault(idx, {})
            val = (q.get(t, 0) + c) % p
            if val:
                q[t] = val
            else:
                q.pop(t, None)
        if cof is not None:
            vadd_scaled(cof, -c, t, cofs[idx], p)
    return rem


def normal_form(v: Vec, G: GroebnerBasis) -> Vec:
    """Fully reduced remainder of ``v`` modulo ``G``."""
    return _reduce(v, G)


def divide(v: Vec, G: GroebnerBasis):
    """Return ``(quotients, remainder)`` with ``v = sum q_i G_i + remainder``."""
    q: dict = {}
    r = _reduce(v, G, quotients=q)
    return q, r


def is_member(v: Vec, G: GroebnerBasis) -> bool:
    return not _reduce(v, G, full=False)


def _check_inputs(gens, rank, shifts):
    for g in gens:
        for comp, m in g:
            if not 0 <= comp < rank:
                raise UsageError(f"component {comp} outside ambient rank {rank}")
        if not vec_is_homogeneous(g, shifts):
            raise UsageError("non-homogeneous generator; only graded input is supported")


def buchberger(gens, rank: int, shifts, p: int, *, background=(), track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``background + gens``.

    Inputs of each degree are reduced against the partial basis after that
    degree's S-pairs; the ``gens`` entries that survive form a minimal
    generating set of the submodule modulo the ``background`` submodule
    (recorded in ``minimal_inputs`` / ``minimal_elements``).
    With ``track=True`` each basis element carries a cofactor vector expressing
    it in terms of ``background + gens`` (indices in that order).
    """
    shifts = tuple(shifts)
    if len(shifts) != rank:
        raise UsageError("shifts length must equal rank")
    all_inputs = [dict(g) for g in background] + [dict(g) for g in gens]
    _check_inputs(all_inputs, rank, shifts)
    nb = len(background)
    order = ModuleOrder(rank, shifts)
    key = order.key

    G = GroebnerBasis([], [], rank, shifts, p, order, [] if track else None)
    degs: list = []
    pairs: list = []  # (deg, lcm key, i, j, lcm, comp)

    pending = []
    for k, g in enumerate(all_inputs):
        if g:
            pending.append((vec_degree(g, shifts), 0 if k < nb else 1, k))
    pending.sort()

    def add(vec, cofv, deg):
        lead = max(vec, key=key)
        inv = pow(vec[lead], -1, p)
        vec = vec_scale(vec, inv, p)
        idx = len(G.generators)
        G.generators.append(vec)
        G.leads.append(lead)
        degs.append(deg)
        G._by_comp.setdefault(lead[0], []).append((lead[1], idx))
        if track:
            G.cofactors.append(vec_scale(cofv, inv, p))
        _update(idx)
        return vec

    def _update(h):
        comp_h, lead_h = G.leads[h]
        new = []
        for i in range(h):
            comp_i, lead_i = G.leads[i]
            if comp_i == comp_h:
                new.append((mono_lcm(lead_i, lead_h), i))
        # chain criterion on existing pairs
        kept = []
        for pr in pairs:
            _, _, i, j, lcm, comp = pr
            if (
                comp == comp_h
                and mono_divides(lead_h, lcm)
                and mono_lcm(G.leads[i][1], lead_h) != lcm
                and mono_lcm(G.leads[j][1], lead_h) != lcm
            ):
                continue
            kept.append(pr)
        pairs[:] = kept
        # M criterion, then F criterion (one pair per lcm)
        lcms = [l for l, _ in new]
        survivors = []
        for lcm, i in new:
            if any(o != lcm and mono_divides(o, lcm) for o in lcms):
                continue
            survivors.append((lcm, i))
        seen = {}
        for lcm, i in survivors:
            coprime = all(a == 0 or b == 0 for a, b in zip(G.leads[i][1], lead_h))
            if lcm in seen:
                seen[lcm][1] = seen[lcm][1] or coprime
                continue
            seen[lcm] = [i, coprime]
        for lcm, (i, coprime) in seen.items():
            if coprime and rank == 1:
                continue
            d = sum(lcm) + shifts[comp_h]
            pairs.append((d, key((comp_h, lcm)), i, h, lcm, comp_h))
        pairs.sort(key=lambda t: (t[0], t[1], t[2], t[3]))

    while pairs or pending:
        D = min(
            pairs[0][0] if pairs else float("inf"),
            pending[0][0] if pending else float("inf"),
        )
        while pairs and pairs[0][0] == D:
            _, _, i, j, lcm, comp = pairs.pop(0)
            gi, gj = G.generators[i], G.generators[j]
            s: Vec = {}
            vadd_scaled(s, 1, mono_div(lcm, G.leads[i][1]), gi, p)
            vadd_scaled(s, -1, mono_div(lcm, G.leads[j][1]), gj, p)
            cof = None
            if track:
                cof = {}
                vadd_scaled(cof, 1, mono_div(lcm, G.leads[i][1]), G.cofactors[i], p)
                vadd_scaled(cof, -1, mono_div(lcm, G.leads[j][1]), G.cofactors[j], p)
            r = _reduce(s, G, cof=cof, cofs=G.cofactors)
            if r:
                add(r, cof, D)
        while pending and pending[0][0] == D:
            _, kind, k = pending.pop(0)
            cof = {(k, (0,) * _nvars(all_inputs[k])): 1} if track else None
            r = _reduce(all_inputs[k], G, cof=cof, cofs=G.cofactors)
            if r:
                elem = add(r, cof, D)
                if kind == 1:
                    G.minimal_inputs.append(k - nb)
                    G.minimal_elements.append(elem)
    _interreduce(G)
    return G


def _nvars(v: Vec) -> int:
    return len(next(iter(v))[1])


def _interreduce(G: GroebnerBasis) -> None:
    """Tail-reduce every element by the others (leads are already minimal)."""
    p = G.p
    key = G.order.key
    for idx, g in enumerate(G.generators):
        lead = G.leads[idx]
        v = dict(g)
        out = {lead: v.pop(lead)}
        cof = G.cofactors[idx] if G.cofactors is not None else None
        changed = False
        while v:
            t = max(v, key=key)
            c = v[t]
            r = G.reducer(*t)
            if r is None or r == idx:
                out[t] = c
                del v[t]
                continue
            changed = True
            mult = mono_div(t[1], G.leads[r][1])
            vadd_scaled(v, -c, mult, G.generators[r], p)
            if cof is not None:
                cof = dict(cof)
                vadd_scaled(cof, -c, mult, G.cofactors[r], p)
        if changed:
            G.generators[idx] = out
            if cof is not None:
                G.cofactors[idx] = cof


def spair_residues(G: GroebnerBasis) -> list:
    """Remainders of all S-pairs (all zero iff ``G`` is a Groebner basis)."""
    out = []
    p = G.p
    for j in range(len(G)):
        for i in range(j):
            if G.leads[i][0] != G.leads[j][0]:
                continue
            lcm = mono_lcm(G.leads[i][1], G.leads[j][1])
            s: Vec = {}
            vadd_scaled(s, 1, mono_div(lcm, G.leads[i][1]), G.generators[i], p)
            vadd_scaled(s, -1, mono_div(lcm, G.leads[j][1]), G.generators[j], p)
            out.append(normal_form(s, G))
    return out


@dataclass
class SyzygyMatrix:
    """Columns generate the syzygies of ``source``; shifts are the source degrees."""

    columns: list
    shifts: tuple
    source: list
    order: str = "schreyer"


def syzygies(G: GroebnerBasis) -> SyzygyMatrix:
    """Schreyer syzygies of a Groebner basis.

    For each ``j`` only pairs ``(i, j)``, ``i < j``, whose multiplier of ``e_j``
    is minimal among those pairs are used; under the Schreyer order their
    leading terms generate the lead module of the syzygy module.
    """
    p = G.p
    cols = []
    for j in range(len(G)):
        comp_j, lead_j = G.leads[j]
        cands = []
        for i in range(j):
            if G.leads[i][0] == comp_j:
                lcm = mono_lcm(G.leads[i][1], lead_j)
                cands.append((mono_div(lcm, lead_j), i, lcm))
        for mj, i, lcm in cands:
            if any(
                (o != mj and mono_divides(o, mj)) or (o == mj and k < i)
                for o, k, _ in cands
            ):
                continue
            mi = mono_div(lcm, G.leads[i][1])
            s: Vec = {}
            vadd_scaled(s, 1, mi, G.generators[i], p)
            vadd_scaled(s, -1, mj, G.generators[j], p)
            q, r = divide(s, G)
            if r:
                raise AssertionError("S-pair of a Groebner basis left a remainder")
            col: Vec = {(i, mi): 1}
            col[(j, mj)] = p - 1
            for l, ql in q.items():
                for m, c in ql.items():
                    k = (l, m)
                    val = (col.get(k, 0) - c) % p
                    if val:
                        col[k] = val
                    else:
                        col.pop(k, None)
            if col:
                cols.append(col)
    return SyzygyMatrix(cols, tuple(G.degrees()), list(G.generators))


def syzygies_of(gens, rank: int, shifts, p: int) -> tuple:
    """Generators of the syzygy module of arbitrary homogeneous ``gens``.

    Returns ``(columns, source_shifts)`` where column entries index ``gens``.
    """
    gens = [dict(g) for g in gens]
    src_shifts = []
    for g in gens:
        d = vec_degree(g, shifts)
        src_shifts.append(d)
    nonzero = [k for k, g in enumerate(gens) if g]
    if not nonzero:
        return [], tuple(src_shifts)
    nv = _nvars(gens[nonzero[0]])
    one = (0,) * nv
    G = buchberger(gens, rank, shifts, p, track=True)
    cols = []
    for col in syzygies(G).columns:
        out: Vec = {}
        for (l, m), c in col.items():
            vadd_scaled(out, c, m, G.cofactors[l], p)
        if out:
            cols.append(out)
    for k, g in enumerate(gens):
        if not g:
            cols.append({(k, one): 1})
            continue
        q, r = divide(g, G)
        if r:
            raise AssertionError("input does not reduce to zero against its own basis")
        out = {(k, one): 1}
        for l, ql in q.items():
            for m, c in ql.items():
                vadd_scaled(out, -c, m, G.cofactors[l], p)
        if out:
            cols.append(out)
    # syzygies of zero generators carry no degree; give them degree 0
    src = tuple(0 if d is None else d for d in src_shifts)
    return _dedupe(cols), src


def _dedupe(cols) -> list:
    seen = set()
    out = []
    for c in cols:
        k = frozenset(c.items())
        if k not in seen:
            seen.add(k)
            out.append(c)
    return out


def minimal_generators(gens, rank: int, shifts, p: int, *, background=()) -> list:
    """A minimal homogeneous generating set of ``<gens> + <background>`` modulo
    ``<background>``; elements are returned reduced and monic."""
    G = buchberger(gens, rank, shifts, p, background=background)
    return list(G.minimal_elements)
