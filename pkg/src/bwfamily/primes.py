"""Big-integer primality, small factorizations and prime-power detection."""

from __future__ import annotations

import math
import random
from typing import Optional

# Miller-Rabin with the first 13 prime bases is exact below this bound.
DETERMINISTIC_BOUND = 3317044064679887385961981
_DET_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
RANDOM_ROUNDS = 64

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def primality_regime(n: int) -> str:
    return "deterministic" if abs(n) < DETERMINISTIC_BOUND else "probabilistic"


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, seed=None) -> bool:
    """True iff ``|n|`` is prime.

    Exact below ``DETERMINISTIC_BOUND``. Above it, 64 random Miller-Rabin
    rounds; the base generator is seeded from ``n`` (and ``seed`` when
    given) so the answer is reproducible run to run.
    """
    n = abs(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a, d, s) for a in _DET_BASES)
    rng = random.Random(f"{seed}:{n}")
    for _ in range(RANDOM_ROUNDS):
        a = rng.randrange(2, n - 1)
        if not _strong_probable_prime(n, a, d, s):
            return False
    return True


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise ValueError("integer_root of a negative number")
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def prime_power_base(n: int, seed=None) -> Optional[tuple]:
    """Return ``(p, e)`` with ``n == p**e``, ``p`` prime, ``e >= 1``; else None."""
    if n < 2:
        return None
    if is_prime(n, seed):
        return n, 1
    for e in range(n.bit_length(), 1, -1):
        b = integer_root(n, e)
        if b >= 2 and b ** e == n and is_prime(b, seed):
            return b, e
    return None


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 64
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int) -> dict:
    """Prime factorization of ``|n|`` as ``{p: e}``; ``factor_int(1) == {}``."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    rng = random.Random(n)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m, rng)
        stack.extend((d, m // d))
    return out


def divisors(n: int) -> list:
    """Positive divisors of ``|n|`` in increasing order."""
    divs = [1]
    for p, e in factor_int(n).items():
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def num_divisors(n: int) -> int:
    out = 1
    for e in factor_int(n).values():
        out *= e + 1
    return out
