"""Irreducibility over Q for the small degrees that families use.

Strategy, cheapest first:

1. squarefree check over Q (a repeated factor is its own witness);
2. factor-degree patterns of the reduction modulo up to 12 odd primes; one
   irreducible reduction settles it, and so does an empty intersection of
   the patterns' possible proper factor degrees;
3. Kronecker interpolation search for an actual factor, degree <= 8 only.

Anything that gets past all three raises :class:`IrreducibilityInconclusive`.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from typing import Optional

from .exactmath import QPoly, poly_divmod, poly_gcd
from .primes import divisors, num_divisors

MAX_PRIMES = 12
PRIME_SCAN_LIMIT = 400
KRONECKER_MAX_DEGREE = 8
KRONECKER_MAX_COMBOS = 400_000


class IrreducibilityInconclusive(Exception):
    """The test could neither certify irreducibility nor exhibit a factor."""


# polynomials over F_p as little-endian int lists -------------------------


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    nb = len(b)
    for shift in range(len(a) - nb, -1, -1):
        c = a[shift + nb - 1] * inv % p
        if c:
            for j in range(nb):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
    return _ptrim(a[: nb - 1])


def _pdiv(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    nb = len(b)
    q = [0] * max(len(a) - nb + 1, 0)
    for shift in range(len(a) - nb, -1, -1):
        c = a[shift + nb - 1] * inv % p
        q[shift] = c
        if c:
            for j in range(nb):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
    return _ptrim(q)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([c % p for c in out])


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppow_mod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), f, p)
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def degree_pattern_mod_p(int_coeffs, p) -> list:
    """Degrees of the irreducible factors of a squarefree polynomial mod p.

    Distinct-degree factorization; the caller guarantees the reduction is
    squarefree and keeps its degree.
    """
    f = _ptrim([c % p for c in int_coeffs])
    pattern = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppow_mod(h, p, f, p)
        g = _pgcd(_psub(h, [0, 1], p), f, p)
        dg = len(g) - 1
        if dg > 0:
            pattern.extend([i] * (dg // i))
            f = _pdiv(f, g, p)
            h = _pmod(h, f, p)
    if len(f) - 1 > 0:
        pattern.append(len(f) - 1)
    return sorted(pattern)


def _subset_sums(pattern) -> set:
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums}
    return sums


def _odd_primes():
    n = 3
    while n < PRIME_SCAN_LIMIT:
        if all(n % q for q in range(3, int(n ** 0.5) + 1, 2)):
            yield n
        n += 2


def possible_factor_degrees(int_coeffs) -> tuple:
    """Intersect mod-p degree patterns.

    Returns ``(allowed, patterns)`` where ``allowed`` is the set of proper
    factor degrees (1..n-1) still compatible with every pattern seen.
    """
    n = len(int_coeffs) - 1
    lc = int_coeffs[-1]
    allowed = set(range(1, n))
    patterns = {}
    deriv = [i * c for i, c in enumerate(int_coeffs)][1:]
    for p in _odd_primes():
        if len(patterns) >= MAX_PRIMES or not allowed:
            break
        if lc % p == 0:
            continue
        fp = _ptrim([c % p for c in int_coeffs])
        if len(_pgcd(fp, _ptrim([c % p for c in deriv]), p)) > 1:
            continue
        pat = degree_pattern_mod_p(int_coeffs, p)
        patterns[p] = pat
        allowed &= _subset_sums(pat)
    return allowed, patterns


# Kronecker ------------------------------------------------------------------


def _interpolate(xs, ys) -> Optional[list]:
    """Integer coefficients of the interpolant through (xs, ys), or None."""
    n = len(xs)
    # Newton divided differences
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(deg + 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
        deg += 1
    if any(c.denominator != 1 for c in poly):
        return None
    return [int(c) for c in poly]


def _eval_int(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def kronecker_factor(int_coeffs, degrees) -> Optional[QPoly]:
    """Search for an integer factor of one of the given degrees."""
    n = len(int_coeffs) - 1
    f = QPoly(int_coeffs)
    values = {}
    for x in sorted(range(-12, 13), key=lambda v: (abs(v), v < 0)):
        v = _eval_int(int_coeffs, x)
        if v == 0:
            return QPoly([-x, 1])
        values[x] = v
    ranked = sorted(values, key=lambda x: (num_divisors(values[x]), abs(values[x]), abs(x)))
    lc = int_coeffs[-1]
    for d in sorted(degrees):
        if d < 1 or 2 * d > n:
            continue
        pts = ranked[: d + 1]
        checks = ranked[d + 1 : d + 5]
        div_lists = []
        for i, x in enumerate(pts):
            ds = divisors(values[x])
            div_lists.append(ds if i == 0 else ds + [-v for v in ds])
        combos = 1
        for dl in div_lists:
            combos *= len(dl)
        if combos > KRONECKER_MAX_COMBOS:
            raise IrreducibilityInconclusive(
                f"Kronecker search for a degree-{d} factor needs {combos} trials"
            )
        for ys in itertools.product(*div_lists):
            g = _interpolate(pts, ys)
            if g is None:
                continue
            while g and g[-1] == 0:
                g.pop()
            if len(g) - 1 != d or lc % g[-1]:
                continue
            if any(values[x] % _eval_int(g, x) if _eval_int(g, x) else True for x in checks):
                continue
            gq = QPoly(g)
            if not poly_divmod(f, gq)[1]:
                return gq.primitive_part()
    return None


@functools.lru_cache(maxsize=4096)
def find_factor(f: QPoly) -> Optional[QPoly]:
    """A nontrivial factor of ``f`` over Q, or None if ``f`` is irreducible.

    Raises IrreducibilityInconclusive when neither can be established.
    """
    if f.is_constant():
        raise ValueError("irreducibility is only defined for nonconstant polynomials")
    n = f.degree
    if n == 1:
        return None
    g = poly_gcd(f, f.derivative())
    if not g.is_constant():
        return g.primitive_part()
    ints = f.primitive_part().integer_coeffs()
    allowed, _ = possible_factor_degrees(ints)
    if not allowed:
        return None
    if n > KRONECKER_MAX_DEGREE:
        raise IrreducibilityInconclusive(
            f"degree {n} exceeds the Kronecker limit; mod-p patterns leave factor degrees {sorted(allowed)}"
        )
    return kronecker_factor(ints, {d for d in allowed if 2 * d <= n})


def is_irreducible(f: QPoly) -> bool:
    if f.is_constant():
        return False
    return find_factor(f) is None
