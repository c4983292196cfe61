"""Example files, the on-disk resolution cache, and report serialization."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import re
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import tomli

from .arith import PolyRing, UsageError
from .cring import CIRing, Presentation, make_ring, present
from .resolve import Resolution, detect_degree_period, detect_period

CACHE_FORMAT = "cisyz-resolution"
CACHE_VERSION = 1
TOOL_VERSION = "0.1.0"


class SpecError(UsageError):
    """A problem in an example file, with its location when known."""

    def __init__(self, msg, path=None, line=None, col=None):
        loc = str(path) if path else "<spec>"
        if line is not None:
            loc += f":{line}"
            if col is not None:
                loc += f":{col}"
        super().__init__(f"{loc}: {msg}")
        self.path, self.line, self.col = path, line, col


@dataclass
class ExampleSpec:
    name: str
    p: int
    variables: tuple
    relations: tuple
    rank: int
    shifts: tuple
    columns: tuple
    description: str = ""
    steps: int = 12
    degree_bound: int = 12
    period: int = 2
    seed: int = 0
    trials: int = 20
    path: str | None = None
    _built: tuple | None = field(default=None, repr=False, compare=False)

    def build(self) -> tuple:
        """(CIRing, Presentation) described by the spec."""
        if self._built is None:
            Q = PolyRing(self.p, self.variables)
            ring = make_ring(Q, list(self.relations))
            M = present(ring, self.rank, self.shifts, [list(c) for c in self.columns])
            self._built = (ring, M)
        return self._built

    def key(self) -> str:
        """Hash of the mathematical content, used to name cache files."""
        blob = json.dumps(
            [self.p, list(self.variables), list(self.relations), self.rank, list(self.shifts),
             [list(c) for c in self.columns]],
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def bundled_examples() -> list:
    root = resources.files("cisyz") / "examples"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".toml"))


def resolve_spec_path(name: str) -> Path:
    """A path on disk, or the name of a bundled example."""
    path = Path(name)
    if path.exists():
        return path
    stem = name[:-5] if name.endswith(".toml") else name
    bundled = resources.files("cisyz") / "examples" / f"{stem}.toml"
    if bundled.is_file():
        return Path(str(bundled))
    raise SpecError("no such file or bundled example", name)


def _locate(text: str, needle: str):
    # line and column of the first quoted occurrence of ``needle``
    for q in ('"', "'"):
        idx = text.find(q + needle + q)
        if idx >= 0:
            line = text.count("\n", 0, idx) + 1
            col = idx - (text.rfind("\n", 0, idx) + 1) + 2
            return line, col
    return None, None


def _locate_key(text: str, key: str):
    m = re.search(rf"^[ \t]*{re.escape(key)}[ \t]*=[ \t]*", text, re.M)
    if m is None:
        return None, None
    return text.count("\n", 0, m.start()) + 1, m.end() - m.start() + 1


def _table(data, key, path, required=True) -> dict:
    val = data.get(key)
    if val is None:
        if required:
            raise SpecError(f"missing [{key}] table", path)
        return {}
    if not isinstance(val, dict):
        raise SpecError(f"[{key}] must be a table", path)
    return val


def _int(tab, key, path, default=None, minimum=None) -> int:
    val = tab.get(key, default)
    if val is None:
        raise SpecError(f"missing key '{key}'", path)
    if not isinstance(val, int) or isinstance(val, bool):
        raise SpecError(f"'{key}' must be an integer", path)
    if minimum is not None and val < minimum:
        raise SpecError(f"'{key}' must be >= {minimum}", path)
    return val


def parse_spec_text(text: str, path=None) -> ExampleSpec:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise SpecError(exc.msg, path, exc.lineno, exc.colno) from None
    ring_t = _table(data, "ring", path)
    mod_t = _table(data, "module", path)
    an_t = _table(data, "analysis", path, required=False)

    p = _int(ring_t, "p", path, 101)
    variables = ring_t.get("vars")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise SpecError("ring.vars must be a list of names", path)
    relations = ring_t.get("relations", [])
    if not isinstance(relations, list) or not all(isinstance(r, str) for r in relations):
        raise SpecError("ring.relations must be a list of polynomial strings", path)
    rank = _int(mod_t, "rank", path, minimum=0)
    shifts = mod_t.get("shifts", [0] * rank)
    if not isinstance(shifts, list) or not all(isinstance(s, int) for s in shifts) or len(shifts) != rank:
        raise SpecError(f"module.shifts must list {rank} integers", path)
    columns = mod_t.get("relations", [])
    if not isinstance(columns, list):
        raise SpecError("module.relations must be a list of columns", path)
    for k, col in enumerate(columns):
        if not isinstance(col, list) or len(col) != rank or not all(isinstance(e, (str, int)) for e in col):
            raise SpecError(f"module relation {k + 1} must list {rank} polynomial strings", path)

    spec = ExampleSpec(
        name=str(data.get("name", Path(path).stem if path else "example")),
        description=str(data.get("description", "")),
        p=p,
        variables=tuple(variables),
        relations=tuple(relations),
        rank=rank,
        shifts=tuple(shifts),
        columns=tuple(tuple(str(e) for e in c) for c in columns),
        steps=_int(an_t, "steps", path, 12, 1),
        degree_bound=_int(an_t, "degree_bound", path, 12, 0),
        period=_int(an_t, "period", path, 2, 1),
        seed=_int(an_t, "seed", path, 0),
        trials=_int(an_t, "trials", path, 20, 1),
        path=str(path) if path else None,
    )
    try:
        spec.build()
    except UsageError as exc:
        line = col = None
        try:
            PolyRing(p, tuple(variables))
        except Exception:
            line, col = _locate_key(text, "p" if "modulus" in str(exc) else "vars")
            raise SpecError(str(exc), path, line, col) from None
        for s in list(relations) + [e for c in columns for e in c if isinstance(e, str)]:
            try:
                PolyRing(p, tuple(variables)).parse(s)
            except Exception:
                line, col = _locate(text, s)
                break
        else:
            bad = _first_inhomogeneous(spec)
            if bad is not None:
                line, col = _locate(text, bad)
        raise SpecError(str(exc), path, line, col) from None
    return spec


def _first_inhomogeneous(spec: ExampleSpec):
    Q = PolyRing(spec.p, spec.variables)
    for s in spec.relations:
        if not Q.parse(s).is_homogeneous():
            return s
    for col in spec.columns:
        for s in col:
            if not Q.parse(s).is_homogeneous():
                return s
    return None


def parse_spec(path) -> ExampleSpec:
    path = resolve_spec_path(str(path))
    return parse_spec_text(path.read_text(encoding="utf-8"), path)


# ---------------------------------------------------------------------------
# cache


def matrix_to_json(P: Presentation) -> list:
    """Entries as [row, col, [[exponents, coeff], ...]], sorted."""
    out = []
    for j, v in enumerate(P.relations):
        rows: dict = {}
        for (i, m), c in v.items():
            rows.setdefault(i, []).append([list(m), c])
        for i in sorted(rows):
            out.append([i, j, sorted(rows[i], key=lambda t: t[0], reverse=True)])
    return out


def matrix_from_json(entries, ncols: int) -> tuple:
    cols = [{} for _ in range(ncols)]
    for i, j, terms in entries:
        for m, c in terms:
            cols[j][(i, tuple(m))] = c
    return tuple(cols)


def resolution_to_json(spec: ExampleSpec, R: Resolution) -> dict:
    mods = []
    for P in R.modules:
        mods.append({
            "shifts": list(P.shifts),
            "columns": len(P.relations),
            "matrix": matrix_to_json(P),
        })
    return {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "tool_version": TOOL_VERSION,
        "key": spec.key(),
        "ring": {"p": spec.p, "vars": list(spec.variables), "relations": list(spec.relations)},
        "truncated": R.truncated,
        "reason": R.reason,
        "modules": mods,
    }


def resolution_from_json(data: dict, ring: CIRing) -> Resolution:
    mods = []
    for m in data["modules"]:
        rels = matrix_from_json(m["matrix"], m["columns"])
        mods.append(Presentation(ring, tuple(m["shifts"]), rels, minimal=True))
    R = Resolution(ring, mods, over="A" if ring.codim else "Q",
                   truncated=data.get("truncated", False), reason=data.get("reason", ""))
    R.period_onset = detect_period(mods)
    R.degree_period_onset = detect_degree_period(mods)
    return R


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_path(cache_dir, spec: ExampleSpec) -> Path:
    return Path(cache_dir) / f"{spec.name}-{spec.key()}.json"


def load_cached(cache_dir, spec: ExampleSpec, ring: CIRing):
    """Cached resolution, or (None, reason) when absent or stale."""
    path = cache_path(cache_dir, spec)
    if not path.exists():
        return None, "missing"
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None, "unreadable"
    if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
        return None, "version mismatch"
    if data.get("tool_version") != TOOL_VERSION:
        return None, "tool version mismatch"
    if data.get("key") != spec.key():
        return None, "content mismatch"
    return resolution_from_json(data, ring), ""


def store_cached(cache_dir, spec: ExampleSpec, R: Resolution) -> Path:
    path = cache_path(cache_dir, spec)
    atomic_write(path, dumps(resolution_to_json(spec, R)))
    return path


# ---------------------------------------------------------------------------
# reports


def _clean(obj):
    # JSON-safe: infinities become null, tuples become lists
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return None
        return int(obj) if obj.is_integer() else obj
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


CSV_COLUMNS = ["i", "beta", "e0", "e1", "reg", "mu"]
FIT_COLUMNS = ["fit", "degree", "onset", "P0", "P1", "inconclusive"]


def rows_to_csv(rows, fits: dict) -> str:
    """Step table, a blank line, then one row per fitted invariant.

    Polynomials are written as ascending coefficients in m, separated by ';'.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        reg = "" if math.isinf(r.reg) else int(r.reg)
        e1 = r.e[1] if len(r.e) > 1 else ""
        w.writerow([r.i, r.beta, r.e[0], e1, reg, r.mu])
    w.writerow([])
    w.writerow(FIT_COLUMNS)
    for name in sorted(fits):
        f = fits[name]
        polys = f["polynomials"] + [[]] * (2 - len(f["polynomials"]))
        w.writerow([name, "" if f["degree"] is None else f["degree"], "" if f["onset"] is None else f["onset"],
                    ";".join(polys[0]), ";".join(polys[1]), str(f["inconclusive"]).lower()])
    return buf.getvalue()
