"""Deciding whether a rational polynomial represents integers or primes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import QPoly
from .irreducible import IrreducibilityInconclusive, find_factor
from .primes import is_prime, prime_power_base, primality_regime  # noqa: F401  (re-exported)


class NeverIntegralError(ValueError):
    pass


@dataclass(frozen=True)
class IntegralityProfile:
    """Residues ``a mod d`` at which ``f(a)`` is an integer.

    ``d`` is the lcm of the coefficient denominators; ``d*f`` has integer
    coefficients, so integrality of ``f(a)`` only depends on ``a mod d``.
    """

    d: int
    good_residues: frozenset

    @property
    def represents_integers(self) -> bool:
        return bool(self.good_residues)

    def admits(self, x: int) -> bool:
        return x % self.d in self.good_residues


def integrality_profile(f: QPoly) -> IntegralityProfile:
    if f.is_zero():
        raise ValueError("integrality profile of the zero polynomial")
    d = f.denominator_lcm()
    ints = f.integer_coeffs()
    good = set()
    for a in range(d):
        acc = 0
        for c in reversed(ints):
            acc = (acc * a + c) % d
        if acc == 0:
            good.add(a)
    return IntegralityProfile(d, frozenset(good))


def residue_table(f: QPoly, modulus: int) -> dict:
    """``{a: (d*f)(a) mod modulus}`` for ``a`` in ``range(modulus)``.

    Only meaningful when ``modulus`` is a multiple of the denominator lcm.
    """
    ints = f.integer_coeffs()
    out = {}
    for a in range(modulus):
        acc = 0
        for c in reversed(ints):
            acc = acc * a + c
        out[a] = acc % modulus
    return out


def value_gcd(f: QPoly, profile: Optional[IntegralityProfile] = None) -> int:
    """Exact gcd of all integer values ``f(n)``, ``n`` ranging over Z.

    For each good residue ``a0`` the polynomial ``g(x) = f(a0 + d*x)`` is
    integer-valued on Z, and the gcd of all its values is the gcd of its
    first ``deg g + 1`` values (they generate the binomial-basis
    coefficients). ``gcd(0, n) = |n|``.
    """
    profile = profile or integrality_profile(f)
    if not profile.represents_integers:
        raise NeverIntegralError(f"{f} takes no integer value at an integer argument")
    n = 0 if f.is_constant() else f.degree
    g = 0
    for a0 in sorted(profile.good_residues):
        for j in range(n + 1):
            v = f(Fraction(a0 + profile.d * j))
            assert v.denominator == 1
            g = math.gcd(g, int(v))
    return g


@dataclass(frozen=True)
class PrimesVerdict:
    nonconstant: bool
    represents_integers: bool
    irreducible: bool
    positive_leading: bool
    value_gcd: int
    factor: Optional[QPoly] = None
    profile: Optional[IntegralityProfile] = None

    @property
    def verdict(self) -> bool:
        return (
            self.nonconstant
            and self.irreducible
            and self.represents_integers
            and self.positive_leading
            and self.value_gcd == 1
        )

    def reasons(self) -> list:
        out = []
        if not self.nonconstant:
            out.append("constant")
        if not self.represents_integers:
            out.append(f"never integral (no good residue mod {self.profile.d})")
        if self.nonconstant and not self.irreducible:
            out.append(f"reducible, factor {self.factor}")
        if not self.positive_leading:
            out.append("negative leading coefficient")
        if self.represents_integers and self.value_gcd != 1:
            out.append(f"every integer value is divisible by {self.value_gcd}")
        return out


def represents_primes(f: QPoly) -> PrimesVerdict:
    """Full predicate with every sub-flag evaluated.

    Raises IrreducibilityInconclusive when irreducibility cannot be decided.
    """
    if f.is_zero():
        raise ValueError("represents_primes of the zero polynomial")
    profile = integrality_profile(f)
    nonconstant = not f.is_constant()
    factor = find_factor(f) if nonconstant else None
    gcd = value_gcd(f, profile) if profile.represents_integers else 0
    return PrimesVerdict(
        nonconstant=nonconstant,
        represents_integers=profile.represents_integers,
        irreducible=nonconstant and factor is None,
        positive_leading=f.lc > 0,
        value_gcd=gcd,
        factor=factor,
        profile=profile,
    )


__all__ = [
    "IntegralityProfile",
    "IrreducibilityInconclusive",
    "NeverIntegralError",
    "PrimesVerdict",
    "integrality_profile",
    "is_prime",
    "prime_power_base",
    "primality_regime",
    "represents_primes",
    "residue_table",
    "value_gcd",
]
