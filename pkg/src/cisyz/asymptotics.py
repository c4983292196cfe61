"""Quasi-polynomial fits of syzygy invariants and window-relative theorem checks.

Asymptotic statements ("for all i >> 0") cannot be decided from finitely many
syzygies. Every verdict here refers to the computed window and to the tail
on which the fitted polynomials reproduce the data exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"
INCONCLUSIVE = "inconclusive"


def poly_eval(coeffs, m) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * m + c
    return total


def poly_degree(coeffs) -> int | None:
    """Degree of an ascending coefficient tuple; None for the zero polynomial."""
    for k in range(len(coeffs) - 1, -1, -1):
        if coeffs[k]:
            return k
    return None


def _interpolate(points) -> tuple:
    # Lagrange interpolation in exact rationals, returned as ascending coefficients
    n = len(points)
    out = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == k:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xk - xj
        for t in range(n):
            out[t] += yk * basis[t] / denom
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _differences(ys, d: int) -> list:
    for _ in range(d):
        ys = [b - a for a, b in zip(ys, ys[1:])]
    return ys


@dataclass(frozen=True)
class QuasiPolyFit:
    """f(r*m + j) = P_j(m) for every sampled index >= onset.

    ``polys[j]`` holds ascending rational coefficients in m; the zero
    polynomial is the empty tuple and has degree None.
    """

    period: int
    polys: tuple
    onset: int | None
    start: int
    length: int
    inconclusive: bool = False
    reason: str = ""

    @property
    def degree(self) -> int | None:
        degs = [poly_degree(P) for P in self.polys]
        degs = [d for d in degs if d is not None]
        return max(degs) if degs else None

    @property
    def leading(self) -> tuple:
        return tuple(P[-1] if P else Fraction(0) for P in self.polys)

    def coefficient(self, j: int, k: int) -> Fraction:
        """Coefficient of m^k in P_j."""
        P = self.polys[j]
        return P[k] if 0 <= k < len(P) else Fraction(0)

    def __call__(self, i: int) -> Fraction:
        m, j = divmod(i, self.period)
        return poly_eval(self.polys[j], m)

    def window(self) -> str:
        end = self.start + self.length - 1
        if self.inconclusive:
            return f"window i={self.start}..{end}, no stable tail"
        return f"window i={self.start}..{end}, tail from i0={self.onset}"

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "polynomials": [[str(c) for c in P] for P in self.polys],
            "degree": self.degree,
            "leading": [str(c) for c in self.leading],
            "onset": self.onset,
            "window": [self.start, self.start + self.length - 1],
            "inconclusive": self.inconclusive,
            "reason": self.reason,
        }


def fit_quasi_polynomial(seq, start: int = 0, period: int = 2, max_degree: int | None = None) -> QuasiPolyFit:
    """Fit a period-``period`` quasi-polynomial to ``seq[k] = f(start + k)``.

    For each residue class the lowest degree d is chosen for which some tail
    has at least three equal d-th differences; the longest such tail is used.
    Too little data gives an inconclusive fit, never a guessed one.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    seq = [int(v) for v in seq]
    n = len(seq)
    classes: dict = {j: [] for j in range(period)}
    for k, v in enumerate(seq):
        i = start + k
        classes[i % period].append((i // period, v, i))
    polys = []
    excluded = []
    for j in range(period):
        pts = classes[j]
        ys = [v for _, v, _ in pts]
        top = len(ys) - 3 if max_degree is None else min(max_degree, len(ys) - 3)
        found = None
        for d in range(0, top + 1):
            for s in range(0, len(ys) - d - 2):
                diffs = _differences(ys[s:], d)
                if len(set(diffs)) == 1:
                    found = (d, s)
                    break
            if found:
                break
        if found is None:
            return QuasiPolyFit(period, (), None, start, n, True,
                                f"residue class {j}: no tail with 3 stable differences")
        d, s = found
        tail = pts[s:]
        P = _interpolate([(Fraction(m), Fraction(v)) for m, v, _ in tail[: d + 1]])
        if any(poly_eval(P, m) != v for m, v, _ in tail):
            return QuasiPolyFit(period, (), None, start, n, True, f"residue class {j}: interpolation mismatch")
        polys.append(P)
        excluded.extend(i for _, _, i in pts[:s])
    onset = max(excluded) + 1 if excluded else start
    return QuasiPolyFit(period, tuple(polys), onset, start, n)


def complexity_estimate(betti, start: int = 0) -> int | None:
    """cx = degree of the Betti fit + 1; 0 for eventually vanishing Betti numbers, None if inconclusive."""
    fit = fit_quasi_polynomial(betti, start)
    if fit.inconclusive:
        return None
    return 0 if fit.degree is None else fit.degree + 1


@dataclass
class TheoremReport:
    name: str
    statement: str
    verdict: str
    window: str
    hypotheses: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "verdict": self.verdict,
            "window": self.window,
            "hypotheses": self.hypotheses,
            "witness": self.witness,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class StepRow:
    """Invariants of one syzygy M_i; ``e`` uses the binomial basis of dimension dim A."""

    i: int
    beta: int
    shifts: tuple
    dim: int | None
    e: tuple
    reg: float
    mcm: bool | None

    @property
    def mu(self) -> int:
        return self.beta


def _frac(x) -> str:
    return str(Fraction(x))


def _hypotheses(ring, rows, cx) -> dict:
    return {
        "codim": ring.codim,
        "codim>=2": ring.codim >= 2,
        "dim": ring.dim,
        "dim>=1": ring.dim >= 1,
        "mcm_from": mcm_onset(rows),
        "cx": cx,
    }


def mcm_onset(rows) -> int | None:
    """First index from which every computed nonzero syzygy is verified MCM."""
    onset = None
    for r in reversed(rows):
        if r.beta == 0 or r.mcm is True:
            onset = r.i
        else:
            break
    return onset


def _tail(rows, key):
    i0 = mcm_onset(rows)
    if i0 is None:
        return None, []
    return i0, [key(r) for r in rows if r.i >= i0]


def fit_invariant(rows, key, period: int = 2) -> QuasiPolyFit | None:
    i0, seq = _tail(rows, key)
    if i0 is None:
        return None
    return fit_quasi_polynomial(seq, i0, period)


def check_complexity(ring, rows, period: int = 2) -> tuple:
    """Fit i -> beta_i; returns (report, cx)."""
    betas = [r.beta for r in rows]
    fit = fit_quasi_polynomial(betas, 0, period)
    cx = None if fit.inconclusive else (0 if fit.degree is None else fit.degree + 1)
    w = {"betti": betas, "fit": fit.to_dict(), "cx": cx}
    if cx is None:
        verdict = INCONCLUSIVE
    else:
        verdict = HOLDS if cx <= ring.codim else FAILS
    rep = TheoremReport(
        "betti-growth",
        "i -> beta_i is eventually a period-2 quasi-polynomial of degree cx - 1, and cx <= codim",
        verdict, fit.window(), {"codim": ring.codim}, w,
    )
    if cx == 1:
        rep.notes.append("cx = 1: the Betti numbers are eventually a nonzero constant")
    return rep, cx


def _degree_matches(fit: QuasiPolyFit, cx: int) -> bool:
    if cx == 0:
        return fit.degree is None
    return fit.degree == cx - 1


def _coefficient_theorem(name, statement, ring, rows, cx, index, period, need_codim2):
    hyp = _hypotheses(ring, rows, cx)
    fit = fit_invariant(rows, lambda r: r.e[index] if len(r.e) > index else 0, period)
    if fit is None:
        return TheoremReport(name, statement, NOT_APPLICABLE, "no MCM tail in window", hyp,
                             {"sequence": [list(r.e) for r in rows]},
                             ["no computed syzygy is verified maximal Cohen-Macaulay"])
    w = {"sequence": [r.e[index] if len(r.e) > index else 0 for r in rows], "fit": fit.to_dict()}
    if need_codim2 and not (ring.codim >= 2 and ring.dim >= 1):
        return TheoremReport(name, statement, NOT_APPLICABLE, fit.window(), hyp, w,
                             ["not-applicable (hypothesis): needs codim >= 2 and dim >= 1; observed fit reported"])
    if fit.inconclusive or cx is None:
        return TheoremReport(name, statement, INCONCLUSIVE, fit.window(), hyp, w)
    verdict = HOLDS if _degree_matches(fit, cx) else FAILS
    return TheoremReport(name, statement, verdict, fit.window(), hyp, w)


def check_e0_theorem(ring, rows, cx, period: int = 2) -> TheoremReport:
    return _coefficient_theorem(
        "e0-quasi-polynomial",
        "for M MCM, i -> e_0(M_i) is a period-2 quasi-polynomial of degree cx(M) - 1",
        ring, rows, cx, 0, period, False,
    )


def check_e1_theorem(ring, rows, cx, period: int = 2) -> TheoremReport:
    return _coefficient_theorem(
        "e1-quasi-polynomial",
        "for M MCM over a CI of codim >= 2 and dim >= 1, i -> e_1(M_i) is a period-2 quasi-polynomial of degree cx(M) - 1",
        ring, rows, cx, 1, period, True,
    )


def check_inequality(ring, rows, cx, period: int = 2) -> TheoremReport:
    """Pointwise e_1 >= e_0 - mu on MCM syzygies and the same for the coefficients of n^(cx-1)."""
    hyp = _hypotheses(ring, rows, cx)
    statement = "e_1(M_i) >= e_0(M_i) - mu(M_i) on MCM syzygies; leading coefficients a >= alpha - gamma per parity"
    violations, equal = [], []
    for r in rows:
        if r.beta == 0 or r.mcm is not True or len(r.e) < 2:
            continue
        lhs, rhs = r.e[1], r.e[0] - r.mu
        if lhs < rhs:
            violations.append(r.i)
        elif lhs == rhs:
            equal.append(r.i)
    w: dict = {"violations": violations, "pointwise_equality_at": equal}
    if not any(r.beta and r.mcm is True for r in rows):
        return TheoremReport("e1-inequality", statement, NOT_APPLICABLE, "no MCM syzygy in window", hyp, w)
    if ring.dim < 1:
        return TheoremReport("e1-inequality", statement, NOT_APPLICABLE, "dim A = 0", hyp, w,
                             ["e_1 is not defined when dim A = 0"])
    fits = {k: fit_invariant(rows, f, period) for k, f in
            (("e0", lambda r: r.e[0]), ("e1", lambda r: r.e[1]), ("mu", lambda r: r.mu))}
    if any(f is None for f in fits.values()):
        return TheoremReport("e1-inequality", statement, NOT_APPLICABLE, "no MCM tail in window", hyp, w)
    window = fits["mu"].window()
    w["fits"] = {k: f.to_dict() for k, f in fits.items()}
    if violations:
        return TheoremReport("e1-inequality", statement, FAILS, window, hyp, w)
    if cx is None or any(f.inconclusive for f in fits.values()):
        w["leading_equality"] = None
        return TheoremReport("e1-inequality", statement, INCONCLUSIVE, window, hyp, w,
                             ["pointwise inequality holds; leading coefficients not available"])
    k = max(cx - 1, 0)
    per, eq = [], []
    ok = True
    for j in range(period):
        a = fits["e1"].coefficient(j, k)
        alpha = fits["e0"].coefficient(j, k)
        gamma = fits["mu"].coefficient(j, k)
        per.append({"parity": j, "a": _frac(a), "alpha": _frac(alpha), "gamma": _frac(gamma)})
        ok = ok and a >= alpha - gamma
        eq.append(a == alpha - gamma)
    w["leading"] = per
    w["leading_equality"] = eq
    w["equality_all_parities"] = all(eq)
    rep = TheoremReport("e1-inequality", statement, HOLDS if ok else FAILS, window, hyp, w)
    if ring.codim < 2:
        rep.notes.append("codim 1: outside the codim >= 2 hypothesis of the limit statement; checked anyway")
    return rep


def _constant_tail(values) -> int | None:
    """Index from which ``values`` is constant, if that tail has >= 3 entries."""
    if len(values) < 3:
        return None
    s = len(values) - 1
    while s > 0 and values[s - 1] == values[-1]:
        s -= 1
    return s if len(values) - s >= 3 else None


def check_reg_bounded(ring, rows, cx, inequality: TheoremReport) -> TheoremReport:
    """Window form of boundedness of reg G(M_n)."""
    hyp = _hypotheses(ring, rows, cx)
    statement = "if cx = 2 and equality holds in the leading-coefficient inequality, reg G(M_n) is bounded"
    i0 = mcm_onset(rows)
    regs = [None if math.isinf(r.reg) else int(r.reg) for r in rows]
    w: dict = {"reg": regs}
    if i0 is None:
        return TheoremReport("reg-bounded", statement, NOT_APPLICABLE, "no MCM tail in window", hyp, w)
    tail = [(r.i, r.reg) for r in rows if r.i >= i0 and r.beta > 0]
    window = f"window i={i0}..{rows[-1].i}"
    if not tail or cx == 0:
        return TheoremReport("reg-bounded", statement, HOLDS, window, hyp, w,
                             ["finite resolution: the regularity sequence is eventually empty"])
    if cx == 1:
        diffs = {}
        for i, v in tail:
            prev = next((u for k, u in tail if k == i - 2), None)
            if prev is not None:
                diffs[i] = v - prev
        seq = [diffs[i] for i in sorted(diffs)]
        w["reg_step2_differences"] = [int(x) for x in seq]
        s = _constant_tail(seq)
        if s is None:
            verdict = INCONCLUSIVE if len(set(seq[-2:])) <= 1 else FAILS
            return TheoremReport("reg-bounded", statement, verdict, window, hyp, w,
                                 ["cx = 1: reg(M_{i+2}) - reg(M_i) is not constant on a tail of length >= 3"])
        w["constant_from"] = sorted(diffs)[s]
        return TheoremReport("reg-bounded", statement, HOLDS, window, hyp, w,
                             ["cx = 1: reg(M_{i+2}) - reg(M_i) is eventually constant on the window"])
    eq = inequality.witness.get("equality_all_parities")
    if cx == 2 and eq:
        vals = [v for _, v in tail]
        half = len(vals) // 2
        first, second = vals[: len(vals) - half], vals[len(vals) - half:]
        w["max_first_half"] = max(first)
        w["max_second_half"] = max(second) if second else None
        if not second:
            return TheoremReport("reg-bounded", statement, INCONCLUSIVE, window, hyp, w)
        verdict = HOLDS if max(second) <= max(first) else FAILS
        rep = TheoremReport("reg-bounded", statement, verdict, window, hyp, w,
                            ["running maximum does not grow across the second half of the window"])
        if ring.codim < 2 or ring.dim < 1:
            rep.notes.append("outside the codim >= 2, dim >= 1 hypothesis")
        return rep
    why = "cx != 2" if cx != 2 else "equality case not observed"
    return TheoremReport("reg-bounded", statement, NOT_APPLICABLE, window, hyp, w, [f"not-applicable (hypothesis): {why}"])


@dataclass(frozen=True)
class KernelRow:
    """Data of one surjection M_{n+2} -> M_n found by the operator scan."""

    n: int
    coeffs: tuple
    mu: int
    e: tuple


def check_additivity(ring, rows, kernels) -> TheoremReport:
    """e_j(M_{n+2}) - e_j(M_n) = e_j(K_n) for j = 0, 1, and the same for mu."""
    statement = "along 0 -> K_n -> M_{n+2} -> M_n -> 0: e_0, e_1 and mu are additive"
    by_i = {r.i: r for r in rows}
    checked, bad = [], []
    for k in kernels:
        a, b = by_i.get(k.n + 2), by_i.get(k.n)
        if a is None or b is None:
            continue
        top = min(2, len(a.e), len(b.e), len(k.e))
        ok = all(a.e[j] - b.e[j] == k.e[j] for j in range(top)) and a.mu - b.mu == k.mu
        checked.append(k.n)
        if not ok:
            bad.append({"n": k.n, "M_n+2": list(a.e[:2]) + [a.mu], "M_n": list(b.e[:2]) + [b.mu],
                        "K_n": list(k.e[:2]) + [k.mu]})
    w = {"checked_steps": checked, "mismatches": bad}
    window = f"steps n in {checked}" if checked else "no surjective operator found"
    if not checked:
        return TheoremReport("additivity", statement, INCONCLUSIVE, window, {}, w)
    return TheoremReport("additivity", statement, FAILS if bad else HOLDS, window, {}, w)


def check_kernel_multiplicity(ring, rows, cx, kernels, inequality: TheoremReport) -> TheoremReport:
    """With cx = 2 and equality, every computed K_n has e_1 = e_0 - mu."""
    statement = "if cx = 2 and the leading-coefficient equality holds, e_1(K_n) = e_0(K_n) - mu(K_n)"
    eq = inequality.witness.get("equality_all_parities")
    w: dict = {"kernels": [{"n": k.n, "e": list(k.e), "mu": k.mu} for k in kernels]}
    if not (cx == 2 and eq):
        return TheoremReport("kernel-minimal-multiplicity", statement, NOT_APPLICABLE, "", {}, w,
                             ["not-applicable (hypothesis): needs cx = 2 and equality"])
    ks = [k for k in kernels if k.mu > 0 and len(k.e) > 1]
    if not ks:
        return TheoremReport("kernel-minimal-multiplicity", statement, INCONCLUSIVE, "no kernels", {}, w)
    bad = [k.n for k in ks if k.e[1] != k.e[0] - k.mu]
    w["mismatches"] = bad
    return TheoremReport("kernel-minimal-multiplicity", statement, FAILS if bad else HOLDS,
                         f"steps n in {[k.n for k in ks]}", {}, w)


__all__ = [
    "FAILS",
    "HOLDS",
    "INCONCLUSIVE",
    "NOT_APPLICABLE",
    "KernelRow",
    "QuasiPolyFit",
    "StepRow",
    "TheoremReport",
    "check_additivity",
    "check_complexity",
    "check_e0_theorem",
    "check_e1_theorem",
    "check_inequality",
    "check_kernel_multiplicity",
    "check_reg_bounded",
    "complexity_estimate",
    "fit_invariant",
    "fit_quasi_polynomial",
    "mcm_onset",
    "poly_degree",
    "poly_eval",
]
