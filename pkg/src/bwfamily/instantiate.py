"""Concrete curve parameters from a family: scanning integer arguments x0."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exactmath import QPoly
from .family import FamilyCandidate
from .integrality import integrality_profile
from .primes import integer_root, is_prime, prime_power_base, primality_regime

# failure reasons, in the order they are tested
R_NON_INTEGRAL = "r_non_integral"
Q_NON_INTEGRAL = "q_non_integral"
T_NON_INTEGRAL = "t_non_integral"
Y_NON_INTEGRAL = "y_non_integral"
NONPOSITIVE = "nonpositive"
R_NOT_PRIME = "r_not_prime"
Q_PRIME_POWER = "q_prime_power"
Q_NOT_PRIME = "q_not_prime"
GCD_T_Q = "gcd_t_q_not_1"
CM_EQUATION = "cm_equation"
R_NOT_DIVIDING = "r_not_dividing_order"
EMBEDDING_DEGREE = "wrong_embedding_degree"

FAILURE_REASONS = (
    R_NON_INTEGRAL,
    Q_NON_INTEGRAL,
    T_NON_INTEGRAL,
    Y_NON_INTEGRAL,
    NONPOSITIVE,
    R_NOT_PRIME,
    Q_PRIME_POWER,
    Q_NOT_PRIME,
    GCD_T_Q,
    CM_EQUATION,
    R_NOT_DIVIDING,
    EMBEDDING_DEGREE,
)


@dataclass(frozen=True)
class CurveParams:
    x0: int
    t0: int
    r0: int
    q0: int
    y0: int
    h0: int
    k: int
    D: int
    rho_numeric: float
    k_bound_ok: bool
    r_ge_sqrt_q: bool
    t_equals_two: bool
    primality: str

    def to_json(self) -> dict:
        doc = asdict(self)
        for key in ("x0", "t0", "r0", "q0", "y0", "h0"):
            doc[key] = str(doc[key])
        return doc


@dataclass(frozen=True)
class Failure:
    x0: int
    reason: str
    detail: str = ""


def embedding_degree_set(q0: int, r0: int, k: int) -> set:
    """{i in 1..k : r0 | q0^i - 1}."""
    out = set()
    acc = 1
    base = q0 % r0
    for i in range(1, k + 1):
        acc = acc * base % r0
        if acc == 1 % r0:
            out.add(i)
    return out


def _as_int(v: Fraction) -> Optional[int]:
    return v.numerator if v.denominator == 1 else None


def check_params(t0: int, r0: int, q0: int, y0: int, k: int, D: int, seed=None) -> Optional[str]:
    """Integer-level check of the curve-existence hypotheses; returns a failure reason or None."""
    if r0 <= 0 or q0 <= 0:
        return NONPOSITIVE
    if not is_prime(r0, seed):
        return R_NOT_PRIME
    if not is_prime(q0, seed):
        return Q_PRIME_POWER if prime_power_base(q0, seed) else Q_NOT_PRIME
    if math.gcd(t0, q0) != 1:
        return GCD_T_Q
    if D * y0 * y0 != 4 * q0 - t0 * t0:
        return CM_EQUATION
    if (q0 + 1 - t0) % r0:
        return R_NOT_DIVIDING
    if embedding_degree_set(q0, r0, k) != {k}:
        return EMBEDDING_DEGREE
    return None


def instantiate_at(c: FamilyCandidate, x0: int, seed=None) -> Union[CurveParams, Failure]:
    if c.y is None:
        raise ValueError("family has no y(x); cannot check the CM equation")
    x = Fraction(x0)
    r0 = _as_int(c.r(x))
    if r0 is None:
        return Failure(x0, R_NON_INTEGRAL)
    q0 = _as_int(c.q(x))
    if q0 is None:
        return Failure(x0, Q_NON_INTEGRAL)
    t0 = _as_int(c.t(x))
    if t0 is None:
        return Failure(x0, T_NON_INTEGRAL)
    y0 = _as_int(c.y(x))
    if y0 is None:
        return Failure(x0, Y_NON_INTEGRAL)
    point_seed = None if seed is None else f"{seed}:{x0}"
    reason = check_params(t0, r0, q0, y0, c.k, c.D, point_seed)
    if reason is not None:
        return Failure(x0, reason, f"t0={t0} r0={r0} q0={q0}")
    h0 = (q0 + 1 - t0) // r0
    log_r = math.log(r0)
    return CurveParams(
        x0=x0,
        t0=t0,
        r0=r0,
        q0=q0,
        y0=abs(y0),
        h0=h0,
        k=c.k,
        D=c.D,
        rho_numeric=math.log(q0) / log_r,
        k_bound_ok=c.k < math.log2(r0) / 8,
        r_ge_sqrt_q=r0 * r0 >= q0,
        t_equals_two=t0 == 2,
        primality=primality_regime(max(r0, q0)),
    )


@dataclass
class ScanReport:
    family: str
    lo: int
    hi: int
    seed: object = None
    hits: list = field(default_factory=list)
    near_misses: Counter = field(default_factory=Counter)
    # points never evaluated because r or q is not integral in their residue class
    skipped: int = 0
    points: int = 0
    mode: str = "range"
    bits: Optional[int] = None

    def accounted(self) -> bool:
        return len(self.hits) + sum(self.near_misses.values()) == self.points

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "mode": self.mode,
            "range": [str(self.lo), str(self.hi)],
            "bits": self.bits,
            "seed": self.seed,
            "points": self.points,
            "skipped": self.skipped,
            "hits": [h.to_json() for h in self.hits],
            "near_misses": dict(sorted(self.near_misses.items())),
        }


class _Scanner:
    """Evaluates points with integrality prefiltering; picklable for workers."""

    def __init__(self, c: FamilyCandidate, seed=None):
        self.c = c
        self.seed = seed
        self.r_profile = integrality_profile(c.r)
        self.q_profile = integrality_profile(c.q)

    def point(self, x0: int):
        if not self.r_profile.admits(x0):
            return Failure(x0, R_NON_INTEGRAL), True
        if not self.q_profile.admits(x0):
            return Failure(x0, Q_NON_INTEGRAL), True
        return instantiate_at(self.c, x0, self.seed), False

    def chunk(self, bounds):
        lo, hi = bounds
        hits, misses, skipped = [], Counter(), 0
        for x0 in range(lo, hi + 1):
            res, skip = self.point(x0)
            skipped += skip
            if isinstance(res, CurveParams):
                hits.append(res)
            else:
                misses[res.reason] += 1
        return hits, misses, skipped


def scan_range(c: FamilyCandidate, lo: int, hi: int, seed=None, workers: int = 1) -> ScanReport:
    """Instantiate every x0 in [lo, hi]; hits come back sorted by x0."""
    if lo > hi:
        raise ValueError("scan_range needs lo <= hi")
    scanner = _Scanner(c, seed)
    report = ScanReport(c.name or "family", lo, hi, seed, points=hi - lo + 1)
    if workers <= 1 or hi - lo < 1000:
        parts = [scanner.chunk((lo, hi))]
    else:
        step = -(-(hi - lo + 1) // workers)
        bounds = [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(scanner.chunk, bounds))
    for hits, misses, skipped in parts:
        report.hits.extend(hits)
        report.near_misses.update(misses)
        report.skipped += skipped
    report.hits.sort(key=lambda h: h.x0)
    return report


EXHAUSTED_AFTER = 16


def _center_for_bits(r: QPoly, bits: int) -> int:
    """Nonnegative x with r(x) roughly 2**bits, from the leading term."""
    n = r.degree
    lc = r.lc
    target = Fraction(2 ** bits) / lc
    if target < 1:
        return 0
    return integer_root(int(target), n)


def scan_bits(
    c: FamilyCandidate, bits: int, count: int, seed=None, max_points: int = 2_000_000
) -> ScanReport:
    """Scan outward from the x0 that puts r(x0) near ``bits`` bits.

    A hit counts if ``r0`` has bit length within one of ``bits``. The walk
    visits |x0| = M, M+1, M-1, M+2, ... (both signs) and stops after
    ``count`` hits, or after ``EXHAUSTED_AFTER`` consecutive magnitudes
    with no point inside the window.
    """
    if bits < 8:
        raise ValueError("bits must be at least 8")
    if count < 1:
        raise ValueError("count must be at least 1")
    if c.r.is_constant():
        raise ValueError("family r(x) is constant")
    scanner = _Scanner(c, seed)
    center = _center_for_bits(c.r, bits)
    report = ScanReport(c.name or "family", center, center, seed, mode="bits", bits=bits)

    def in_window(x0: int) -> bool:
        v = c.r(Fraction(x0))
        if v <= 0:
            return False
        return abs(int(v).bit_length() - bits) <= 1

    seen = set()
    lo = hi = center
    j = 0
    idle = 0
    while len(report.hits) < count and report.points < max_points and idle < EXHAUSTED_AFTER:
        mags = [center + j] + ([center - j] if j and center - j >= 0 else [])
        batch = []
        for m in mags:
            for x0 in (m, -m):
                if x0 not in seen:
                    seen.add(x0)
                    batch.append(x0)
        live = sorted(x0 for x0 in batch if in_window(x0))
        idle = 0 if live else idle + 1
        for x0 in live:
            if len(report.hits) >= count:
                break
            res, skip = scanner.point(x0)
            report.points += 1
            report.skipped += skip
            lo, hi = min(lo, x0), max(hi, x0)
            if isinstance(res, CurveParams):
                report.hits.append(res)
            else:
                report.near_misses[res.reason] += 1
        j += 1
    report.lo, report.hi = lo, hi
    report.hits.sort(key=lambda h: h.x0)
    return report
