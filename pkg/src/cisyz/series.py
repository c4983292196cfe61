"""Integer Laurent polynomials in z and Hilbert numerators of monomial ideals.

A z-polynomial is a dict ``{exponent: int}`` with nonzero values; negative
exponents are allowed (shifted series of the associated graded module).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


def zclean(a: dict) -> dict:
    return {k: v for k, v in a.items() if v}


def zadd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return zclean(out)


def zmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return zclean(out)


def zshift(a: dict, s: int) -> dict:
    return {k + s: v for k, v in a.items()}


def zeval1(a: dict) -> int:
    return sum(a.values())


def one_minus_z_power(k: int) -> dict:
    """(1 - z)^k as a z-polynomial."""
    return zclean({i: (-1) ** i * comb(k, i) for i in range(k + 1)})


def divide_one_minus_z(a: dict) -> dict:
    """Exact quotient a(z) / (1 - z); requires a(1) = 0."""
    if zeval1(a) != 0:
        raise ValueError("not divisible by 1 - z")
    if not a:
        return {}
    lo, hi = min(a), max(a)
    # a = (1 - z) q  =>  q_k = sum_{i <= k} a_i
    out = {}
    acc = 0
    for k in range(lo, hi):
        acc += a.get(k, 0)
        if acc:
            out[k] = acc
    return out


def reduce_series(numer: dict, nvars: int):
    """Cancel (1 - z) factors from ``numer / (1 - z)^nvars``.

    Returns ``(h, dim)`` with ``h(1) != 0``; the zero series gives ``({}, None)``.
    """
    if not numer:
        return {}, None
    h = dict(numer)
    r = nvars
    while zeval1(h) == 0:
        h = divide_one_minus_z(h)
        r -= 1
    return h, r


def series_coefficient(numer: dict, nvars: int, d: int) -> int:
    """Coefficient of z^d in ``numer / (1 - z)^nvars``."""
    total = 0
    for k, v in numer.items():
        n = d - k
        if n < 0:
            continue
        total += v * (comb(n + nvars - 1, nvars - 1) if nvars > 0 else (1 if n == 0 else 0))
    return total


def minimize_monomials(gens) -> tuple:
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    out = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(o, m)) for o in out):
            out.append(m)
    return tuple(sorted(out))


def monomial_numerator(gens, nvars: int) -> dict:
    """K(z) with H(Q/J)(z) = K(z) / (1 - z)^nvars for the monomial ideal J."""
    return dict(_numerator(minimize_monomials(gens), nvars))


@lru_cache(maxsize=65536)
def _numerator(gens: tuple, nvars: int) -> tuple:
    if not gens:
        return ((0, 1),)
    if any(not any(m) for m in gens):
        return ()
    if len(gens) == 1 or _pairwise_coprime(gens):
        out = {0: 1}
        for m in gens:
            out = zmul(out, {0: 1, sum(m): -1})
        return tuple(sorted(out.items()))
    # pivot on x^e, x the most frequent variable, e its least positive exponent
    counts = [sum(1 for m in gens if m[v] > 0) for v in range(nvars)]
    x = max(range(nvars), key=lambda v: (counts[v], -v))
    e = min(m[x] for m in gens if m[x] > 0)
    piv = tuple(e if v == x else 0 for v in range(nvars))
    without = tuple(m for m in gens if m[x] == 0)
    plus = zmul(dict(_numerator(minimize_monomials(without), nvars)), {0: 1, e: -1})
    colon = minimize_monomials(
        tuple(tuple(max(a - b, 0) for a, b in zip(m, piv)) for m in gens)
    )
    rest = zshift(dict(_numerator(colon, nvars)), e)
    return tuple(sorted(zadd(plus, rest).items()))


def _pairwise_coprime(gens) -> bool:
    used = [0] * len(gens[0])
    for m in gens:
        for v, a in enumerate(m):
            if a:
                if used[v]:
                    return False
                used[v] = 1
    return True
