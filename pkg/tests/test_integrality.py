import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bwfamily.exactmath import QPoly, parse_poly
from bwfamily.integrality import (
    NeverIntegralError,
    integrality_profile,
    represents_primes,
    residue_table,
    value_gcd,
)
from bwfamily.primes import (
    DETERMINISTIC_BOUND,
    divisors,
    factor_int,
    integer_root,
    is_prime,
    prime_power_base,
    primality_regime,
)

from .conftest import polys

P = parse_poly


def brute_good_residues(f: QPoly, d: int) -> set:
    return {a % d for a in range(-4 * d, 4 * d + 1) if f(a).denominator == 1}


def brute_value_gcd(f: QPoly, lo=-200, hi=200) -> int:
    g = 0
    for n in range(lo, hi + 1):
        v = f(n)
        if v.denominator == 1:
            g = math.gcd(g, int(v))
    return g


def trial_division(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


class TestProfile:
    def test_examples(self):
        prof = integrality_profile(P("1/4*x^4+x^2+1/4"))
        assert (prof.d, prof.good_residues) == (4, frozenset())
        prof = integrality_profile(P("1/4*x^4+3/4*x^2+1/4"))
        assert (prof.d, prof.good_residues) == (4, frozenset())
        prof = integrality_profile(P("x^2+x+1"))
        assert (prof.d, prof.good_residues) == (1, frozenset({0}))

    def test_half_integers(self):
        prof = integrality_profile(P("1/2*x^2+1/2*x"))
        assert prof.good_residues == {0, 1}
        prof = integrality_profile(P("1/2*x+1/2"))
        assert prof.good_residues == {1}

    def test_residue_table(self):
        # 4 * 1/4(x^4+4x^2+1) mod 4 is 1 for even x and 2 for odd x
        assert residue_table(P("1/4*x^4+x^2+1/4"), 4) == {0: 1, 1: 2, 2: 1, 3: 2}

    @settings(max_examples=300, deadline=None)
    @given(polys(max_deg=5, nonzero=True))
    def test_matches_brute_force(self, f):
        prof = integrality_profile(f)
        assert prof.d == f.denominator_lcm()
        assert set(prof.good_residues) == brute_good_residues(f, prof.d)


class TestValueGcd:
    def test_examples(self):
        assert value_gcd(P("x^2+x+2")) == 2
        assert value_gcd(P("x")) == 1
        assert value_gcd(P("6*x^2+6*x")) == 12
        assert value_gcd(P("36*x^4+36*x^3+18*x^2+6*x+1")) == 1
        assert value_gcd(P("x^3-x")) == 6

    def test_never_integral(self):
        with pytest.raises(NeverIntegralError):
            value_gcd(P("1/4*x^4+x^2+1/4"))

    @settings(max_examples=200, deadline=None)
    @given(polys(max_deg=5, nonzero=True))
    def test_matches_brute_force(self, f):
        if not integrality_profile(f).represents_integers:
            return
        assert value_gcd(f) == brute_value_gcd(f)


class TestRepresentsPrimes:
    def test_bn(self):
        v = represents_primes(P("36*x^4+36*x^3+18*x^2+6*x+1"))
        assert v.verdict and v.value_gcd == 1

    def test_even_values(self):
        v = represents_primes(P("x^2+x+2"))
        assert not v.verdict and v.value_gcd == 2 and v.irreducible

    def test_never_integral(self):
        v = represents_primes(P("1/4*x^4+x^2+1/4"))
        assert not v.verdict and not v.represents_integers
        assert v.reasons()

    def test_reducible_and_negative(self):
        v = represents_primes(P("x^2-1"))
        assert not v.irreducible and v.factor == P("x-1")
        assert not represents_primes(P("-x^2-1")).verdict
        assert not represents_primes(QPoly([7])).verdict


class TestPrimes:
    def test_examples(self):
        assert is_prime(97) and is_prime(103)
        assert not is_prime(1) and not is_prime(0) and not is_prime(-1)
        # primality of |n|
        assert is_prime(-7) and not is_prime(-9)

    def test_against_trial_division(self):
        sieve = bytearray([1]) * 10 ** 6
        sieve[0] = sieve[1] = 0
        for p in range(2, 1001):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        assert all(is_prime(n) == bool(sieve[n]) for n in range(10 ** 6))
        rng = random.Random(5)
        for n in rng.sample(range(10 ** 6), 300):
            assert trial_division(n) == bool(sieve[n])

    def test_strong_pseudoprimes(self):
        # strong pseudoprimes to several small bases
        for n in (2047, 3215031751, 3825123056546413051, 318665857834031151167461):
            assert not is_prime(n)

    def test_regimes(self):
        assert primality_regime(97) == "deterministic"
        assert primality_regime(DETERMINISTIC_BOUND) == "probabilistic"
        big = 2 ** 127 - 1
        assert is_prime(big) and is_prime(big, seed=3)
        assert not is_prime(big * (2 ** 61 - 1), seed=3)

    @settings(max_examples=200)
    @given(st.integers(min_value=-10, max_value=10 ** 30))
    def test_matches_sympy(self, n):
        assert is_prime(n, seed=1) == sympy.isprime(abs(n))

    def test_prime_powers(self):
        assert prime_power_base(103 ** 3) == (103, 3)
        assert prime_power_base(2 ** 10) == (2, 10)
        assert prime_power_base(97) == (97, 1)
        assert prime_power_base(1) is None
        assert prime_power_base(36) is None
        assert integer_root(10 ** 20 + 5, 4) == 10 ** 5

    @settings(max_examples=100)
    @given(st.integers(min_value=1, max_value=10 ** 12))
    def test_factor_int(self, n):
        assert factor_int(n) == {int(p): e for p, e in sympy.factorint(n).items()}
        assert divisors(n) == sorted(int(d) for d in sympy.divisors(n))
