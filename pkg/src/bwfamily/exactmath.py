"""Dense univariate polynomials over Q with exact rational coefficients.

Coefficients are :class:`fractions.Fraction` values, stored little-endian
(index ``i`` is the coefficient of ``x**i``) with trailing zeros stripped, so
the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "QPoly",
    "ZERO_DEGREE",
    "X",
    "parse_poly",
    "format_poly",
    "poly_add",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_extended_gcd",
    "poly_sqrt",
    "poly_eval",
    "poly_compose",
    "fraction_sqrt",
]


class _ZeroDegree:
    """Degree of the zero polynomial.

    Any ordering comparison raises, so code that forgets to special-case
    zero fails loudly instead of silently treating it as -infinity.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"

    def _refuse(self, other):
        raise TypeError("the zero polynomial has no numeric degree")

    __lt__ = __le__ = __gt__ = __ge__ = _refuse
    __add__ = __radd__ = __sub__ = __rsub__ = __mul__ = __rmul__ = _refuse

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("ZERO_DEGREE")


ZERO_DEGREE = _ZeroDegree()


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact rational coefficient")


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class QPoly:
    """Immutable polynomial in Q[x]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim([_frac(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    def __reduce__(self):
        return (QPoly, (self.coeffs,))

    # construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "QPoly":
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "QPoly":
        return cls([0] * n + [c])

    @classmethod
    def parse(cls, text: str) -> "QPoly":
        return parse_poly(text)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QPoly":
        # coeffs already Fractions and trimmed
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    # basic properties -----------------------------------------------------

    @property
    def degree(self):
        if not self.coeffs:
            return ZERO_DEGREE
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([_frac(other)])
        return NotImplemented

    def __hash__(self):
        return hash(("QPoly", self.coeffs))

    def __repr__(self):
        return f"QPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["QPoly"]:
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return QPoly._raw(())
            return QPoly._raw(tuple(a * c for a in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return QPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                raise ZeroDivisionError("polynomial division by zero scalar")
            return QPoly._raw(tuple(a / c for a in self.coeffs))
        if isinstance(other, QPoly):
            q, r = poly_divmod(self, other)
            if r:
                raise ValueError(f"{other} does not divide {self}")
            return q
        return NotImplemented

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_divmod(self, o)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = QPoly._raw((Fraction(1),))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        return poly_eval(self, x)

    # misc -----------------------------------------------------------------

    def monic(self) -> "QPoly":
        if not self.coeffs:
            return self
        return self / self.lc

    def derivative(self) -> "QPoly":
        return QPoly._raw(_trim([i * c for i, c in enumerate(self.coeffs)][1:]))

    def compose(self, inner: "QPoly") -> "QPoly":
        return poly_compose(self, inner)

    def denominator_lcm(self) -> int:
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def integer_coeffs(self) -> list:
        """Coefficients of ``d * self`` as ints, ``d`` the denominator lcm."""
        d = self.denominator_lcm()
        return [int(c * d) for c in self.coeffs]

    def primitive_part(self) -> "QPoly":
        """Scalar multiple with coprime integer coefficients and positive leading term."""
        if not self.coeffs:
            return self
        ints = self.integer_coeffs()
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return QPoly([c // g for c in ints])

    def with_positive_lc(self) -> "QPoly":
        return -self if self.coeffs and self.lc < 0 else self


X = QPoly([0, 1])


def poly_add(a: QPoly, b: QPoly) -> QPoly:
    return a + b


def poly_mul(a: QPoly, b: QPoly) -> QPoly:
    return a * b


def poly_divmod(a: QPoly, b: QPoly):
    """Euclidean division: returns ``(q, r)`` with ``a = q*b + r``, ``deg r < deg b``."""
    if not b.coeffs:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    nb = len(b.coeffs)
    if len(rem) < nb:
        return QPoly._raw(()), a
    lead = b.coeffs[-1]
    quot = [Fraction(0)] * (len(rem) - nb + 1)
    for shift in range(len(rem) - nb, -1, -1):
        c = rem[shift + nb - 1]
        if c == 0:
            continue
        c = c / lead
        quot[shift] = c
        for j, bj in enumerate(b.coeffs):
            rem[shift + j] -= c * bj
    return QPoly._raw(_trim(quot)), QPoly._raw(_trim(rem[: nb - 1]))


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd. ``gcd(f, 0)`` is ``f`` made monic."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_extended_gcd(a: QPoly, b: QPoly):
    """Return ``(g, u, v)`` with ``g`` monic and ``u*a + v*b == g``."""
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    one, zero = QPoly([1]), QPoly()
    r0, r1 = a, b
    u0, u1 = one, zero
    v0, v1 = zero, one
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lead = r0.lc
    return r0 / lead, u0 / lead, v0 / lead


def fraction_sqrt(c: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


def poly_sqrt(a: QPoly) -> Optional[QPoly]:
    """Square root in Q[x] with positive leading coefficient, or None."""
    if not a:
        return a
    n = len(a.coeffs) - 1
    if n % 2 or a.lc < 0:
        return None
    top = fraction_sqrt(a.lc)
    if top is None:
        return None
    m = n // 2
    g = [Fraction(0)] * (m + 1)
    g[m] = top
    two_top = 2 * top
    # coefficient of x^(m+i) in g^2 determines g[i], working downwards
    for i in range(m - 1, -1, -1):
        acc = a.coeffs[m + i]
        for j in range(i + 1, m):
            l = m + i - j
            if i < l <= m and l != m:
                acc -= g[j] * g[l]
        g[i] = acc / two_top
    root = QPoly(g)
    if root * root != a:
        return None
    return root


def poly_eval(a: QPoly, x0):
    """Horner evaluation. ``x0`` may be a rational, a QPoly, or any ring element."""
    if isinstance(x0, (int, Fraction)):
        acc = Fraction(0)
        for c in reversed(a.coeffs):
            acc = acc * x0 + c
        return acc
    if not a.coeffs:
        return x0 * 0
    acc = None
    for c in reversed(a.coeffs):
        acc = (acc * x0 + c) if acc is not None else (x0 * 0 + c)
    return acc


def poly_compose(outer: QPoly, inner: QPoly) -> QPoly:
    if not outer.coeffs:
        return QPoly()
    acc = QPoly()
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc


# text format ---------------------------------------------------------------

_TERM = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+(?:/\d+)?)
        (?:(?P<star>\*)?(?P<var1>x)(?:\^(?P<exp1>\d+))?)?
      |
        (?P<var2>x)(?:\^(?P<exp2>\d+))?
    )
    """,
    re.VERBOSE,
)


def parse_poly(text: str) -> QPoly:
    """Parse ``36*x^4+36*x^3-1/2*x+7`` style text. ``x`` is the only variable."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial string")
    coeffs: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            num, _, den = m.group("coef").partition("/")
            if den and int(den) == 0:
                raise ValueError(f"zero denominator in {text!r}")
            c = Fraction(int(num), int(den) if den else 1)
            if m.group("var1"):
                e = int(m.group("exp1")) if m.group("exp1") else 1
            else:
                if m.group("star"):
                    raise ValueError(f"dangling '*' in {text!r}")
                e = 0
        else:
            c = Fraction(1)
            e = int(m.group("exp2")) if m.group("exp2") else 1
        coeffs[e] = coeffs.get(e, Fraction(0)) + sign * c
        pos = m.end()
        first = False
    if not coeffs:
        return QPoly()
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return QPoly(out)


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: QPoly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for e in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = _fmt_coef(mag)
        else:
            var = "x" if e == 1 else f"x^{e}"
            body = var if mag == 1 else f"{_fmt_coef(mag)}*{var}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out
