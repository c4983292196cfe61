"""Exact arithmetic over GF(p): field elements, monomials, polynomials, vectors.

The Groebner engine works on plain dictionaries for speed:

* a polynomial is ``{exponent_tuple: coeff}`` with ``0 < coeff < p``;
* a module element (vector) is ``{(component, exponent_tuple): coeff}``.

:class:`Polynomial` and :class:`ModuleElement` wrap those dictionaries for the
public API, parsing and printing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations_with_replacement

MAX_VARS = 8
DEFAULT_PRIME = 101

Exp = tuple  # tuple[int, ...]
Poly = dict  # dict[Exp, int]
Vec = dict  # dict[tuple[int, Exp], int]


class UsageError(ValueError):
    """Raised for malformed input: mismatched rings, bad syntax, bad indices."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@total_ordering
class GF:
    """An element of the prime field GF(p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int = DEFAULT_PRIME):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise UsageError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else GF(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else GF(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else GF(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else GF(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GF(-self.value, self.p)

    def inverse(self) -> GF:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return GF(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * GF(v, self.p).inverse()

    def __eq__(self, other):
        v = self._coerce(other)
        return False if v is NotImplemented else self.value == v

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.value}, {self.p})"


# ---------------------------------------------------------------------------
# monomials


def mono_degree(e: Exp) -> int:
    return sum(e)


def degrevlex_key(e: Exp) -> tuple:
    """Sort key: a larger key is a larger monomial in degrevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


ORDERS = {"degrevlex": degrevlex_key}


def monomial_cmp(a: Exp, b: Exp, order: str = "degrevlex") -> int:
    """Return 1 if ``a > b``, -1 if ``a < b``, 0 if equal."""
    if len(a) != len(b):
        raise UsageError("monomials of different arity")
    key = ORDERS[order]
    ka, kb = key(a), key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Exp, a: Exp) -> Exp:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> list:
    """All exponent tuples of total degree ``d``, in descending degrevlex order."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(key=degrevlex_key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# raw polynomial dictionaries


def padd(a: Poly, b: Poly, p: int) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def paxpy(acc: Poly, c: int, m: Exp, b: Poly, p: int) -> None:
    """In place: ``acc += c * m * b``."""
    for mb, cb in b.items():
        key = mono_mul(m, mb)
        v = (acc.get(key, 0) + c * cb) % p
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        paxpy(out, ca, ma, b, p)
    return out


def pscale(a: Poly, c: int, p: int) -> Poly:
    c %= p
    if c == 0:
        return {}
    return {m: (v * c) % p for m, v in a.items()}


def pdegree(a: Poly) -> int | None:
    if not a:
        return None
    return max(sum(m) for m in a)


def p_is_homogeneous(a: Poly) -> bool:
    return len({sum(m) for m in a}) <= 1


# ---------------------------------------------------------------------------
# raw vector dictionaries


def vadd_scaled(acc: Vec, c: int, m: Exp, v: Vec, p: int) -> None:
    """In place: ``acc += c * m * v``."""
    for (comp, mv), cv in v.items():
        key = (comp, mono_mul(m, mv))
        val = (acc.get(key, 0) + c * cv) % p
        if val:
            acc[key] = val
        else:
            acc.pop(key, None)


def vec_from_polys(polys, p: int) -> Vec:
    out: Vec = {}
    for i, f in enumerate(polys):
        for m, c in f.items():
            c %= p
            if c:
                out[(i, m)] = c
    return out


def vec_component(v: Vec, i: int) -> Poly:
    return {m: c for (comp, m), c in v.items() if comp == i}


def vec_components(v: Vec, rank: int) -> list:
    out = [{} for _ in range(rank)]
    for (comp, m), c in v.items():
        out[comp][m] = c
    return out


def vec_degree(v: Vec, shifts) -> int | None:
    if not v:
        return None
    comp, m = next(iter(v))
    return sum(m) + shifts[comp]


def vec_is_homogeneous(v: Vec, shifts) -> bool:
    return len({sum(m) + shifts[comp] for comp, m in v}) <= 1


def vec_scale(v: Vec, c: int, p: int) -> Vec:
    c %= p
    if c == 0:
        return {}
    return {k: (x * c) % p for k, x in v.items()}


def matrix_apply(columns, v: Vec, p: int) -> Vec:
    """Image of ``v`` (coordinates w.r.t. the columns) under the column matrix."""
    out: Vec = {}
    for (j, m), c in v.items():
        vadd_scaled(out, c, m, columns[j], p)
    return out


# ---------------------------------------------------------------------------
# rings and wrapped polynomials


class PolyRing:
    """The standard graded polynomial ring GF(p)[vars] with a fixed monomial order."""

    def __init__(self, p: int = DEFAULT_PRIME, variables=("x", "y"), order: str = "degrevlex"):
        if not is_prime(p):
            raise UsageError(f"modulus {p} is not prime")
        variables = tuple(variables)
        if not 1 <= len(variables) <= MAX_VARS:
            raise UsageError(f"between 1 and {MAX_VARS} variables are supported")
        if len(set(variables)) != len(variables):
            raise UsageError("duplicate variable names")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise UsageError(f"bad variable name {v!r}")
        if order not in ORDERS:
            raise UsageError(f"unknown monomial order {order!r}")
        self.p = p
        self.variables = variables
        self.order = order
        self.nvars = len(variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and (self.p, self.variables, self.order) == (other.p, other.variables, other.order)
        )

    def __hash__(self):
        return hash((self.p, self.variables, self.order))

    def __repr__(self):
        return f"PolyRing(GF({self.p})[{','.join(self.variables)}])"

    def __call__(self, obj) -> Polynomial:
        if isinstance(obj, Polynomial):
            return obj
        if isinstance(obj, str):
            return self.parse(obj)
        if isinstance(obj, int):
            return self.constant(obj)
        if isinstance(obj, dict):
            return Polynomial(self, obj)
        raise UsageError(f"cannot convert {obj!r} to a polynomial")

    def constant(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def gens(self) -> list:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Polynomial(self, {tuple(e): 1}))
        return out

    def monomials(self, d: int) -> list:
        return monomials_of_degree(self.nvars, d)

    def parse(self, text: str) -> Polynomial:
        return Polynomial(self, parse_poly(text, self.variables, self.p))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def parse_poly(text: str, variables, p: int) -> Poly:
    """Parse ``3*x^2*y - (x+y)^2 + 1`` into a raw polynomial dictionary.

    Integer coefficients are reduced mod ``p``. Errors report the column.
    """
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    toks = []
    pos = 0
    text_stripped = text.rstrip()
    while pos < len(text_stripped):
        m = _TOKEN.match(text_stripped, pos)
        if not m:
            raise UsageError(f"unexpected character {text_stripped[pos]!r} at column {pos + 1} in {text!r}")
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), m.lastindex, start))
        pos = m.end()
    toks.append((None, 0, len(text_stripped)))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def fail(msg, t):
        raise UsageError(f"{msg} at column {t[2] + 1} in {text!r}")

    def expr():
        t = peek()
        sign = 1
        if t[0] in ("+", "-"):
            take()
            sign = -1 if t[0] == "-" else 1
        acc = pscale(term(), sign, p)
        while peek()[0] in ("+", "-"):
            op = take()[0]
            rhs = term()
            acc = padd(acc, rhs if op == "+" else pscale(rhs, -1, p), p)
        return acc

    def term():
        acc = power()
        while peek()[0] == "*":
            take()
            acc = pmul(acc, power(), p)
        return acc

    def power():
        base = atom()
        if peek()[0] in ("^", "**"):
            take()
            t = take()
            if t[1] != 1:
                fail("expected an integer exponent", t)
            out = {(0,) * n: 1}
            for _ in range(int(t[0])):
                out = pmul(out, base, p)
            return out
        return base

    def atom():
        t = take()
        if t[1] == 1:
            c = int(t[0]) % p
            return {(0,) * n: c} if c else {}
        if t[1] == 2:
            if t[0] not in index:
                fail(f"unknown variable {t[0]!r}", t)
            e = [0] * n
            e[index[t[0]]] = 1
            return {tuple(e): 1}
        if t[0] == "(":
            inner = expr()
            if take()[0] != ")":
                fail("expected ')'", toks[i - 1])
            return inner
        if t[0] == "-":
            return pscale(atom(), -1, p)
        fail("unexpected token" if t[0] else "unexpected end of input", t)

    if not text.strip():
        raise UsageError("empty polynomial")
    out = expr()
    if peek()[0] is not None:
        fail("unexpected token", peek())
    return out


def format_poly(f: Poly, variables) -> str:
    if not f:
        return "0"
    parts = []
    for m in sorted(f, key=degrevlex_key, reverse=True):
        c = f[m]
        factors = []
        for v, e in zip(variables, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


class Polynomial:
    """Immutable polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms: Poly):
        p = ring.p
        clean = {}
        for m, c in terms.items():
            if len(m) != ring.nvars:
                raise UsageError("exponent vector has the wrong length")
            c %= p
            if c:
                clean[tuple(m)] = c
        self.ring = ring
        self._terms = clean

    @property
    def raw(self) -> Poly:
        return dict(self._terms)

    def terms(self) -> list:
        """(exponents, coefficient) pairs in descending monomial order."""
        key = ORDERS[self.ring.order]
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def lead_term(self):
        if not self._terms:
            return None
        return self.terms()[0]

    @property
    def degree(self) -> int | None:
        return pdegree(self._terms)

    def is_homogeneous(self) -> bool:
        return p_is_homogeneous(self._terms)

    def _check(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise UsageError("polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, padd(self._terms, other._terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, pscale(self._terms, -1, self.ring.p))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, pmul(self._terms, other._terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __str__(self):
        return format_poly(self._terms, self.ring.variables)

    def __repr__(self):
        return f"Polynomial({self})"


@dataclass(frozen=True)
class ModuleElement:
    """Element of a graded free module ``⊕ Q(-shifts[i])``."""

    ring: PolyRing
    components: tuple
    shifts: tuple

    def __post_init__(self):
        if len(self.components) != len(self.shifts):
            raise UsageError("components and shifts differ in length")

    @classmethod
    def from_vec(cls, ring: PolyRing, v: Vec, shifts) -> ModuleElement:
        comps = vec_components(v, len(shifts))
        return cls(ring, tuple(Polynomial(ring, c) for c in comps), tuple(shifts))

    def to_vec(self) -> Vec:
        return vec_from_polys([c.raw for c in self.components], self.ring.p)

    @property
    def degree(self) -> int | None:
        return vec_degree(self.to_vec(), self.shifts)

    def is_homogeneous(self) -> bool:
        return vec_is_homogeneous(self.to_vec(), self.shifts)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"
