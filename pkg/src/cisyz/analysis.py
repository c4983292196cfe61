"""End-to-end analysis of a module: resolution, per-step invariants, operators, verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .asymptotics import (
    KernelRow,
    StepRow,
    TheoremReport,
    check_additivity,
    check_complexity,
    check_e0_theorem,
    check_e1_theorem,
    check_inequality,
    check_kernel_multiplicity,
    check_reg_bounded,
    fit_invariant,
)
from .cring import Presentation, mcm_check
from .eisenbud import lift_resolution, operators, scan_operator
from .hilbert import samuel_coefficients, samuel_data
from .resolve import NEG_INF, Resolution, regularity_associated_graded, resolve


def step_row(i: int, P: Presentation, seed: int = 0) -> StepRow:
    r = P.ring.dim
    if P.rank == 0:
        return StepRow(i, 0, (), None, (0,) * (r + 1), NEG_INF, None)
    H = samuel_data(P)
    return StepRow(
        i,
        P.rank,
        tuple(sorted(P.shifts)),
        H.dim,
        samuel_coefficients(H, r),
        regularity_associated_graded(P),
        mcm_check(P, seed=seed),
    )


def step_rows(R: Resolution, steps: int, seed: int = 0) -> list:
    """One row per i = 0..steps; syzygies past the end of a finite resolution are zero."""
    rows = []
    zero = Presentation(R.ring, (), (), minimal=True)
    for i in range(steps + 1):
        P = R.modules[i] if i < len(R.modules) else zero
        rows.append(step_row(i, P, seed))
    return rows


@dataclass
class Analysis:
    resolution: Resolution
    rows: list
    cx: int | None
    reports: list
    kernels: list = field(default_factory=list)
    scans: list = field(default_factory=list)
    fits: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)

    def report(self, name: str) -> TheoremReport:
        for r in self.reports:
            if r.name == name:
                return r
        raise KeyError(name)

    @property
    def verdicts(self) -> dict:
        return {r.name: r.verdict for r in self.reports}


def scan_kernels(R: Resolution, trials: int = 20, seed: int = 0) -> tuple:
    """Operator scan at every step n with M_{n+2} computed; returns (kernel rows, scan records)."""
    kernels, scans = [], []
    if R.length < 3:
        return kernels, scans
    E = operators(lift_resolution(R))
    r = R.ring.dim
    for n in range(0, len(R.modules) - 2):
        if R.modules[n + 2].rank == 0 and R.modules[n].rank == 0:
            continue
        op = scan_operator(E, n, trials=trials, seed=seed + n)
        rec = {"n": n, "surjective": op.surjective, "coeffs": list(op.coeffs), "trials": op.trials_used,
               "well_defined": op.well_defined}
        if op.surjective and op.kernel is not None:
            K = op.kernel
            e = samuel_coefficients(samuel_data(K), r) if K.rank else (0,) * (r + 1)
            kernels.append(KernelRow(n, op.coeffs, K.rank, e))
            rec["kernel"] = {"mu": K.rank, "e": list(e)}
        else:
            rec["witness_generator"] = op.witness
        scans.append(rec)
    return kernels, scans


def analyze(
    M: Presentation,
    steps: int = 12,
    period: int = 2,
    seed: int = 0,
    trials: int = 20,
    budget: float | None = None,
    with_operators: bool = True,
    resolution: Resolution | None = None,
) -> Analysis:
    R = resolution if resolution is not None else resolve(M, steps=steps, budget=budget)
    ring = M.ring
    rows = step_rows(R, min(steps, R.length) if R.truncated else steps, seed)
    rep_cx, cx = check_complexity(ring, rows, period)
    e0 = check_e0_theorem(ring, rows, cx, period)
    e1 = check_e1_theorem(ring, rows, cx, period)
    ineq = check_inequality(ring, rows, cx, period)
    reg = check_reg_bounded(ring, rows, cx, ineq)
    kernels, scans = scan_kernels(R, trials, seed) if with_operators else ([], [])
    add = check_additivity(ring, rows, kernels)
    kmm = check_kernel_multiplicity(ring, rows, cx, kernels, ineq)
    fits = {}
    for t in range(2, ring.dim + 1):
        fit = fit_invariant(rows, lambda r, t=t: r.e[t], period)
        if fit is not None:
            fits[f"e{t}"] = fit.to_dict()
    return Analysis(
        R, rows, cx, [rep_cx, e0, e1, ineq, reg, add, kmm], kernels, scans,
        {"exploratory": fits},
        {"steps": steps, "period": period, "seed": seed, "trials": trials},
    )
