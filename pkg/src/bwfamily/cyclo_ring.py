"""Cyclotomic polynomials and arithmetic in K = Q[x]/(r(x))."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactmath import QPoly, poly_divmod, poly_extended_gcd
from .irreducible import IrreducibilityInconclusive, find_factor


class ReducibleModulusError(ValueError):
    def __init__(self, modulus: QPoly, factor: QPoly):
        super().__init__(f"{modulus} is reducible over Q; factor {factor}")
        self.modulus = modulus
        self.factor = factor


class RingMismatchError(ValueError):
    pass


class NotPrimitiveRootError(ValueError):
    pass


def totient(k: int) -> int:
    if k < 1:
        raise ValueError("totient needs k >= 1")
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@functools.lru_cache(maxsize=None)
def cyclotomic(k: int) -> QPoly:
    """k-th cyclotomic polynomial, via Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d."""
    if k < 1:
        raise ValueError("cyclotomic polynomial needs k >= 1")
    num = QPoly.monomial(k) - 1
    for d in range(1, k):
        if k % d == 0:
            q, r = poly_divmod(num, cyclotomic(d))
            assert not r
            num = q
    return num


class ResidueRing:
    """The field Q[x]/(modulus) for an irreducible modulus.

    Two rings compare equal when their monic moduli agree.
    """

    __slots__ = ("modulus", "monic_modulus")

    def __init__(self, modulus: QPoly, check: bool = True):
        if modulus.is_constant():
            raise ValueError("residue ring modulus must be nonconstant")
        if check:
            # may raise IrreducibilityInconclusive
            factor = find_factor(modulus)
            if factor is not None:
                raise ReducibleModulusError(modulus, factor)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "monic_modulus", modulus.monic())

    def __setattr__(self, name, value):
        raise AttributeError("ResidueRing is immutable")

    def __reduce__(self):
        return (ResidueRing, (self.modulus, False))

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other):
        return isinstance(other, ResidueRing) and self.monic_modulus == other.monic_modulus

    def __hash__(self):
        return hash(("ResidueRing", self.monic_modulus))

    def __repr__(self):
        return f"ResidueRing({str(self.modulus)!r})"

    def __call__(self, value: Union[QPoly, int, Fraction, str]) -> "ResidueElement":
        if isinstance(value, str):
            value = QPoly.parse(value)
        elif not isinstance(value, QPoly):
            value = QPoly([value])
        return ResidueElement(value, self)

    def zero(self) -> "ResidueElement":
        return self(0)

    def one(self) -> "ResidueElement":
        return self(1)

    def gen(self) -> "ResidueElement":
        return self(QPoly([0, 1]))


def ring_new(modulus: QPoly) -> ResidueRing:
    return ResidueRing(modulus)


class ResidueElement:
    __slots__ = ("rep", "ring")

    def __init__(self, rep: QPoly, ring: ResidueRing):
        if not rep.is_zero() and rep.degree >= ring.degree:
            rep = poly_divmod(rep, ring.monic_modulus)[1]
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueElement is immutable")

    def __reduce__(self):
        return (ResidueElement, (self.rep, self.ring))

    def _other(self, other) -> "ResidueElement":
        if isinstance(other, ResidueElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, QPoly)):
            return self.ring(other)
        raise TypeError(f"cannot combine ResidueElement with {type(other).__name__}")

    def __add__(self, other):
        return ResidueElement(self.rep + self._other(other).rep, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueElement(self.rep - self._other(other).rep, self.ring)

    def __rsub__(self, other):
        return ResidueElement(self._other(other).rep - self.rep, self.ring)

    def __neg__(self):
        return ResidueElement(-self.rep, self.ring)

    def __mul__(self, other):
        return ResidueElement(self.rep * self._other(other).rep, self.ring)

    __rmul__ = __mul__

    def inverse(self) -> "ResidueElement":
        if self.rep.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        g, u, _ = poly_extended_gcd(self.rep, self.ring.modulus)
        if g != 1:
            raise ZeroDivisionError(f"{self.rep} is a zero divisor modulo {self.ring.modulus}")
        return ResidueElement(u, self.ring)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ResidueElement(self.rep / other, self.ring)
        return self * self._other(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.ring.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other):
        if isinstance(other, ResidueElement):
            return self.ring == other.ring and self.rep == other.rep
        if isinstance(other, (int, Fraction, QPoly)):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.rep))

    def __repr__(self):
        return f"[{self.rep}] mod {self.ring.modulus}"


def ring_add(a: ResidueElement, b: ResidueElement) -> ResidueElement:
    return a + b


def ring_sub(a: ResidueElement, b: ResidueElement) -> ResidueElement:
    return a - b


def ring_mul(a: ResidueElement, b: ResidueElement) -> ResidueElement:
    return a * b


def ring_inv(a: ResidueElement) -> ResidueElement:
    return a.inverse()


def ring_pow(a: ResidueElement, e: int) -> ResidueElement:
    if e < 0:
        raise ValueError("ring_pow takes a nonnegative exponent")
    return a ** e


@dataclass(frozen=True)
class ZetaImage:
    """An element known to be a primitive k-th root of unity in its ring."""

    k: int
    z: ResidueElement

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        value = cyclotomic(self.k)(self.z)
        if not value.is_zero():
            raise NotPrimitiveRootError(
                f"Phi_{self.k}({self.z.rep}) = {value.rep} != 0 modulo {self.z.ring.modulus}"
            )

    @property
    def ring(self) -> ResidueRing:
        return self.z.ring


def zeta_image_new(k: int, z: ResidueElement) -> ZetaImage:
    return ZetaImage(k, z)


__all__ = [
    "IrreducibilityInconclusive",
    "NotPrimitiveRootError",
    "ReducibleModulusError",
    "ResidueElement",
    "ResidueRing",
    "RingMismatchError",
    "ZetaImage",
    "cyclotomic",
    "ring_add",
    "ring_inv",
    "ring_mul",
    "ring_new",
    "ring_pow",
    "ring_sub",
    "totient",
    "zeta_image_new",
]
