"""Command line interface: ``cisyz <command> <example> [flags]``.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 partial result
(time budget exhausted).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .analysis import analyze
from .arith import UsageError
from .asymptotics import FAILS, fit_invariant, fit_quasi_polynomial
from .eisenbud import (
    identity_defects,
    lift_resolution,
    matrix_factorization_defects,
    operators,
    scan_operator,
)
from .files import (
    TOOL_VERSION,
    atomic_write,
    SpecError,
    bundled_examples,
    dumps,
    load_cached,
    parse_spec,
    rows_to_csv,
    store_cached,
)
from .hilbert import hilbert_series, oracle_dim, samuel_coefficients, samuel_data
from .resolve import (
    detect_degree_period,
    detect_period,
    composition_defects,
    exactness_defects,
    minimality_defects,
    next_syzygy,
    resolve,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3


def _warn(msg: str) -> None:
    print(f"cisyz: {msg}", file=sys.stderr)


def get_resolution(spec, args):
    """Resolution through ``args.steps`` syzygies, reusing and extending the cache."""
    ring, M = spec.build()
    steps = args.steps
    R = None
    if args.cache_dir:
        R, why = load_cached(args.cache_dir, spec, ring)
        if R is None and why not in ("missing",):
            _warn(f"cache ignored ({why}); recomputing")
    if R is not None and (R.length >= steps or R.is_finite()) and not R.truncated:
        if R.length > steps:
            R.modules = R.modules[: steps + 1]
        return R
    if R is not None and not R.truncated and R.length > 0:
        # extend a shorter cached resolution
        start = time.monotonic()
        mods = list(R.modules)
        while len(mods) - 1 < steps and mods[-1].rank:
            if args.budget is not None and time.monotonic() - start > args.budget:
                R.truncated, R.reason = True, f"budget of {args.budget}s exceeded after {len(mods) - 1} steps"
                break
            mods.append(next_syzygy(mods[-1]))
        R.modules = mods
        R.period_onset = detect_period(mods)
        R.degree_period_onset = detect_degree_period(mods)
    else:
        R = resolve(M, steps=steps, budget=args.budget)
    if args.cache_dir and not R.truncated:
        store_cached(args.cache_dir, spec, R)
    return R


def _header(spec) -> dict:
    return {
        "example": spec.name,
        "description": spec.description,
        "ring": {"p": spec.p, "vars": list(spec.variables), "relations": list(spec.relations)},
        "module": {"rank": spec.rank, "shifts": list(spec.shifts), "relations": [list(c) for c in spec.columns]},
        "provenance": {"tool_version": TOOL_VERSION},
    }


def _resolution_summary(R) -> dict:
    return {
        "betti": R.betti,
        "graded_betti": R.graded_betti,
        "period_onset": R.period_onset,
        "degree_period_onset": R.degree_period_onset,
        "finite": R.is_finite(),
        "truncated": R.truncated,
        "reason": R.reason,
    }


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def cmd_resolve(spec, args) -> int:
    R = get_resolution(spec, args)
    doc = _header(spec)
    doc["resolution"] = _resolution_summary(R)
    if args.output == "csv":
        lines = ["i,beta,shifts"]
        for i, P in enumerate(R.modules):
            lines.append(f"{i},{P.rank},{' '.join(map(str, sorted(P.shifts)))}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        doc["matrices"] = [P.matrix() for P in R.modules]
        _emit(args, dumps(doc))
    return EXIT_PARTIAL if R.truncated else EXIT_OK


def cmd_hilbert(spec, args) -> int:
    R = get_resolution(spec, args)
    r = spec.build()[0].dim
    out = []
    for i, P in enumerate(R.modules):
        if P.rank == 0:
            out.append({"i": i, "beta": 0, "dim": None})
            continue
        H, G = hilbert_series(P), samuel_data(P)
        out.append({
            "i": i,
            "beta": P.rank,
            "graded_numerator": {str(k): v for k, v in sorted(H.numerator.items())},
            "dim": G.dim,
            "h": {str(k): v for k, v in sorted(G.h.items())},
            "e": list(G.e),
            "e_dim_A": list(samuel_coefficients(G, r)),
        })
    if args.output == "csv":
        lines = ["i,beta,dim,e"]
        for row in out:
            e = " ".join(map(str, row.get("e", [])))
            lines.append(f"{row['i']},{row['beta']},{'' if row['dim'] is None else row['dim']},{e}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        doc = _header(spec)
        doc["hilbert"] = out
        _emit(args, dumps(doc))
    return EXIT_PARTIAL if R.truncated else EXIT_OK


def build_report(spec, args) -> tuple:
    R = get_resolution(spec, args)
    ring, M = spec.build()
    A = analyze(M, steps=args.steps, period=2, seed=args.seed, trials=args.trials, resolution=R)
    fits = {}
    for name, key in (("beta", lambda r: r.beta), ("mu", lambda r: r.mu),
                      ("e0", lambda r: r.e[0]), ("e1", lambda r: r.e[1] if len(r.e) > 1 else 0)):
        if name == "beta":
            fits[name] = fit_quasi_polynomial([r.beta for r in A.rows], 0, args.period).to_dict()
            continue
        f = fit_invariant(A.rows, key, args.period)
        if f is not None:
            fits[name] = f.to_dict()
    doc = _header(spec)
    doc["settings"] = {"steps": args.steps, "period": args.period, "seed": args.seed, "trials": args.trials,
                       "degree_bound": args.degree_bound}
    doc["resolution"] = _resolution_summary(R)
    doc["steps"] = [
        {"i": r.i, "beta": r.beta, "mu": r.mu, "shifts": list(r.shifts), "dim": r.dim, "e": list(r.e),
         "reg": r.reg, "mcm": r.mcm}
        for r in A.rows
    ]
    doc["cx"] = A.cx
    doc["fits"] = fits
    doc["exploratory_fits"] = A.fits.get("exploratory", {})
    doc["verdicts"] = [rep.to_dict() for rep in A.reports]
    doc["operator_scan"] = A.scans
    doc["window_note"] = "all verdicts are relative to the computed window of syzygies"
    return doc, A, R, fits


def cmd_analyze(spec, args) -> int:
    doc, A, R, fits = build_report(spec, args)
    if args.output == "csv":
        _emit(args, rows_to_csv(A.rows, fits))
    else:
        _emit(args, dumps(doc))
    if R.truncated:
        return EXIT_PARTIAL
    return EXIT_FAIL if any(rep.verdict == FAILS for rep in A.reports) else EXIT_OK


def cmd_report(spec, args) -> int:
    doc, A, R, fits = build_report(spec, args)
    if args.out_dir:
        base = Path(args.out_dir) / spec.name
        atomic_write(base.with_suffix(".json"), dumps(doc))
        atomic_write(base.with_suffix(".csv"), rows_to_csv(A.rows, fits))
    elif args.output == "csv":
        _emit(args, rows_to_csv(A.rows, fits))
    else:
        _emit(args, dumps(doc))
    if R.truncated:
        return EXIT_PARTIAL
    return EXIT_FAIL if any(rep.verdict == FAILS for rep in A.reports) else EXIT_OK


def cmd_operators(spec, args) -> int:
    R = get_resolution(spec, args)
    ring = R.ring
    doc = _header(spec)
    if R.length < 3 and not R.is_finite():
        raise UsageError("operators need at least 3 resolution steps (use --steps)")
    E = operators(lift_resolution(R))
    ident = identity_defects(E)
    doc["identity_defects"] = ident
    doc["steps"] = E.steps
    bad = bool(ident)
    if ring.codim == 1:
        onset = R.degree_period_onset if R.degree_period_onset is not None else 0
        mf = matrix_factorization_defects(E, onset)
        doc["matrix_factorization"] = {"tail_from": onset, "defects": mf}
        bad = bad or bool(mf)
    scans = []
    for n in range(0, len(R.modules) - 2):
        op = scan_operator(E, n, trials=args.trials, seed=args.seed + n)
        rec = {"n": n, "coeffs": list(op.coeffs), "surjective": op.surjective, "trials": op.trials_used,
               "well_defined": op.well_defined, "seed": args.seed + n}
        if op.kernel is not None:
            rec["kernel_rank"] = op.kernel.rank
        if op.witness is not None:
            rec["witness_generator"] = op.witness
        if op.well_defined is False:
            bad = True
        scans.append(rec)
    doc["scan"] = scans
    if args.output == "csv":
        lines = ["n,surjective,trials,kernel_rank"]
        for s in scans:
            lines.append(f"{s['n']},{str(s['surjective']).lower()},{s['trials']},{s.get('kernel_rank', '')}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, dumps(doc))
    if bad:
        return EXIT_FAIL
    return EXIT_PARTIAL if R.truncated else EXIT_OK


def oracle_mismatches(R, max_degree: int) -> list:
    """(i, n, gb, dense) where the Groebner dimension and the dense oracle disagree.

    Degrees 0..max_degree are checked, and also max_degree degrees past the
    least generator degree of each syzygy.
    """
    out = []
    for i, P in enumerate(R.modules):
        if P.rank == 0:
            continue
        H = hilbert_series(P)
        base = min(P.shifts)
        degrees = sorted(set(range(0, max_degree + 1)) | set(range(base, base + max_degree + 1)))
        for n in degrees:
            a, b = H.dim_at(n), oracle_dim(P, n)
            if a != b:
                out.append((i, n, a, b))
    return out


def cmd_oracle(spec, args) -> int:
    R = get_resolution(spec, args)
    D = args.max_degree if args.max_degree is not None else args.degree_bound
    mism = oracle_mismatches(R, D)
    comp = composition_defects(R)
    mini = minimality_defects(R)
    exact = exactness_defects(R, args.degree_bound)
    doc = _header(spec)
    doc["oracle"] = {
        "max_degree": D,
        "modules_checked": len(R.modules),
        "mismatches": [list(t) for t in mism],
        "composition_defects": comp,
        "minimality_defects": [list(t) for t in mini],
        "exactness_defects": [list(t) for t in exact],
        "ok": not (mism or comp or mini or exact),
    }
    if args.output == "csv":
        lines = ["check,count", f"dimension_mismatches,{len(mism)}", f"composition,{len(comp)}",
                 f"minimality,{len(mini)}", f"exactness,{len(exact)}"]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, dumps(doc))
    if not doc["oracle"]["ok"]:
        return EXIT_FAIL
    return EXIT_PARTIAL if R.truncated else EXIT_OK


HELP = {
    "resolve": "minimal free resolution: Betti numbers, shifts, matrices",
    "hilbert": "Hilbert series and coefficients of each syzygy",
    "analyze": "invariants per syzygy, fits and theorem verdicts",
    "operators": "Eisenbud operators and the surjectivity scan",
    "oracle": "check the engine against dense linear algebra",
    "report": "analyze and write JSON plus CSV",
}

COMMANDS = {
    "resolve": cmd_resolve,
    "hilbert": cmd_hilbert,
    "analyze": cmd_analyze,
    "operators": cmd_operators,
    "oracle": cmd_oracle,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cisyz", description="Syzygies over graded complete intersections.")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("examples", help="list bundled example names")
    for name in COMMANDS:
        sp = sub.add_parser(name, help=HELP[name])
        sp.add_argument("spec", help="example file or bundled example name")
        sp.add_argument("--steps", type=int, default=None, help="number of syzygies (default from the file, else 12)")
        sp.add_argument("--degree-bound", type=int, default=None, help="degree window for exactness checks")
        sp.add_argument("--period", type=int, default=None, help="period of the reported fits")
        sp.add_argument("--seed", type=int, default=None, help="seed of the operator scan")
        sp.add_argument("--trials", type=int, default=None, help="random operators tried per step")
        sp.add_argument("--cache-dir", default=None, help="reuse and store resolutions here")
        sp.add_argument("--output", choices=("json", "csv"), default="json")
        sp.add_argument("--max-degree", type=int, default=None, help="degree window of the oracle")
        sp.add_argument("--budget", type=float, default=None, help="seconds allowed for the resolution")
        sp.add_argument("--out", default=None, help="write to this file instead of stdout")
        if name == "report":
            sp.add_argument("--out-dir", default=None, help="write <name>.json and <name>.csv here")
    return ap


def _apply_defaults(spec, args) -> None:
    for key in ("steps", "degree_bound", "period", "seed", "trials"):
        if getattr(args, key) is None:
            setattr(args, key, getattr(spec, key))
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.period != 2:
        _warn("theorem verdicts always use period 2; --period only changes the reported fits")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "examples":
        print("\n".join(bundled_examples()))
        return EXIT_OK
    try:
        spec = parse_spec(args.spec)
        _apply_defaults(spec, args)
        return COMMANDS[args.command](spec, args)
    except SpecError as exc:
        _warn(str(exc))
        return EXIT_USAGE
    except UsageError as exc:
        _warn(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
