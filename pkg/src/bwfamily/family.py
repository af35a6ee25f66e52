"""Brezing-Weng construction and the complete-family validator."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cyclo_ring import (
    ResidueElement,
    ResidueRing,
    ZetaImage,
    cyclotomic,
    totient,
)
from .exactmath import QPoly, format_poly, parse_poly, poly_divmod, poly_sqrt
from .integrality import (
    IrreducibilityInconclusive,
    integrality_profile,
    represents_primes,
    value_gcd,
)
from .primes import factor_int

# sqrt(-D) as a polynomial in a primitive k-th root of unity zeta
SQRT_MINUS_D_TABLE = {
    (3, 3): QPoly([1, 2]),  # 2*zeta + 1
    (4, 1): QPoly([0, 1]),  # zeta
    (6, 3): QPoly([-1, 2]),  # 2*zeta - 1
    (8, 1): QPoly([0, 0, 1]),  # zeta^2
    (8, 2): QPoly([0, 1, 0, 1]),  # zeta + zeta^3
    (12, 1): QPoly([0, 0, 0, 1]),  # zeta^3
    (12, 3): QPoly([-1, 0, 2]),  # 2*zeta^2 - 1
}


class UnsupportedSqrtError(ValueError):
    """No built-in square root of -D applies; pass one explicitly."""


class InvalidSqrtError(ValueError):
    pass


class InconsistentFamilyError(ValueError):
    def __init__(self, problems):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


class InternalInconsistencyError(RuntimeError):
    """An identity that holds by construction failed: a bug, not a verdict."""


def is_squarefree_positive(D: int) -> bool:
    if D < 1:
        return False
    return all(e == 1 for e in factor_int(D).values())


def _normalize_sign(e: ResidueElement) -> ResidueElement:
    return -e if not e.rep.is_zero() and e.rep.lc < 0 else e


def verify_sqrt(s: ResidueElement, D: int) -> bool:
    return s * s == -D


def sqrt_minus_d(k: int, D: int, z: ZetaImage) -> ResidueElement:
    """Built-in sqrt(-D) evaluated at the given root of unity, sign-normalized."""
    if z.k != k:
        raise ValueError(f"zeta image is a primitive {z.k}-th root, not {k}-th")
    expr = SQRT_MINUS_D_TABLE.get((k, D))
    if expr is None:
        raise UnsupportedSqrtError(
            f"no built-in sqrt(-{D}) for k={k}; supply the square root explicitly"
        )
    s = expr(z.z)
    if not verify_sqrt(s, D):
        raise InternalInconsistencyError(f"table entry ({k}, {D}) does not square to -{D}")
    return _normalize_sign(s)


def find_sqrt_minus_d(D: int, z: ZetaImage) -> tuple:
    """sqrt(-D) in the ring of ``z``, with a note on how it was found.

    Tries the table entry for ``(z.k, D)`` first, then any table entry for
    ``D`` evaluated at ``z`` or at the generator ``x`` whenever that element
    is a primitive root of the matching order. Every result is verified by
    squaring.
    """
    if (z.k, D) in SQRT_MINUS_D_TABLE:
        return sqrt_minus_d(z.k, D, z), f"table ({z.k}, {D}) at zeta"
    ring = z.ring
    for (k2, d2), expr in sorted(SQRT_MINUS_D_TABLE.items()):
        if d2 != D:
            continue
        for label, cand in (("zeta", z.z), ("x", ring.gen())):
            if cyclotomic(k2)(cand).is_zero():
                s = expr(cand)
                if verify_sqrt(s, D):
                    return _normalize_sign(s), f"table ({k2}, {D}) at {label} (primitive {k2}-th root)"
    raise UnsupportedSqrtError(
        f"no built-in sqrt(-{D}) found in Q[x]/({ring.modulus}) for k={z.k}; "
        "supply the square root explicitly"
    )


@dataclass(frozen=True)
class FamilyCandidate:
    """A tuple (k, D, t, r, q, y, h) of polynomials.

    Unless ``diagnostic`` is set, construction checks h*r = q+1-t,
    r | Phi_k(t-1) and D*y^2 = 4q - t^2, filling in ``h`` and ``y`` when
    they are omitted and derivable.
    """

    k: int
    D: int
    t: QPoly
    r: QPoly
    q: QPoly
    y: Optional[QPoly] = None
    h: Optional[QPoly] = None
    name: str = field(default="", compare=False)
    source: str = field(default="", compare=False)
    diagnostic: bool = field(default=False, compare=False)

    def __post_init__(self):
        problems = []
        if self.r.is_constant() or self.r.lc <= 0:
            problems.append("r must be nonconstant with positive leading coefficient")
        else:
            quot, rem = poly_divmod(self.q + 1 - self.t, self.r)
            if self.h is None and not rem:
                object.__setattr__(self, "h", quot)
            if rem or (self.h is not None and self.h * self.r != self.q + 1 - self.t):
                problems.append("h*r != q + 1 - t")
            if poly_divmod(cyclotomic(self.k).compose(self.t - 1), self.r)[1]:
                problems.append(f"r does not divide Phi_{self.k}(t - 1)")
        if self.y is None and self.D > 0:
            y = poly_sqrt((4 * self.q - self.t * self.t) / self.D)
            if y is not None:
                object.__setattr__(self, "y", y)
        if self.y is None or self.D * self.y * self.y != 4 * self.q - self.t * self.t:
            problems.append("D*y^2 != 4q - t^2")
        if problems and not self.diagnostic:
            raise InconsistentFamilyError(problems)


def bw_construct(
    k: int,
    D: int,
    ring: ResidueRing,
    z: ZetaImage,
    s: Optional[ResidueElement] = None,
) -> FamilyCandidate:
    """Brezing-Weng: t = zeta + 1, y = (zeta - 1)/sqrt(-D), q = (t^2 + D y^2)/4.

    ``t`` and ``y`` are reduced modulo r; ``q`` is the honest polynomial.
    """
    if z.k != k:
        raise ValueError(f"zeta image has order {z.k}, expected {k}")
    if z.ring != ring:
        raise ValueError("zeta image lives in a different ring")
    if not is_squarefree_positive(D):
        raise ValueError(f"D = {D} is not a square-free positive integer")
    if s is None:
        s, _ = find_sqrt_minus_d(D, z)
    elif s.ring != ring:
        raise InvalidSqrtError("square root lives in a different ring")
    elif not verify_sqrt(s, D):
        raise InvalidSqrtError(f"({s.rep})^2 != -{D} in Q[x]/({ring.modulus})")
    t = (z.z + 1).rep
    y = (z.z - 1) * s / (-D)
    y = _normalize_sign(y).rep
    q = (t * t + D * y * y) / 4
    r = ring.modulus.with_positive_lc()
    h, rem = poly_divmod(q + 1 - t, r)
    if rem:
        raise InternalInconsistencyError(f"q + 1 - t leaves remainder {rem} modulo r")
    return FamilyCandidate(k=k, D=D, t=t, r=r, q=q, y=y, h=h)


# validation ------------------------------------------------------------------

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"
CONDITIONS = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class ConditionResult:
    status: str
    detail: str = ""
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class FamilyDiagnosis:
    candidate: FamilyCandidate
    conditions: dict
    rho: Optional[Fraction]
    degrees: dict

    @property
    def is_complete_family(self) -> bool:
        return all(self.conditions[c].passed for c in CONDITIONS)

    @property
    def is_ideal(self) -> bool:
        return self.is_complete_family and self.rho == 1

    def failing(self) -> list:
        return [c for c in CONDITIONS if self.conditions[c].status == FAIL]


def _deg(p: Optional[QPoly]):
    if p is None or p.is_zero():
        return None
    return p.degree


def _primes_condition(f: QPoly, label: str) -> ConditionResult:
    if f.is_zero():
        return ConditionResult(FAIL, f"{label} is the zero polynomial", "0")
    profile = integrality_profile(f)
    if not profile.represents_integers:
        return ConditionResult(
            FAIL,
            f"{label} never takes an integer value (no good residue mod {profile.d})",
            f"good residues mod {profile.d}: none",
        )
    if f.is_constant():
        return ConditionResult(FAIL, f"{label} is constant", str(f))
    if f.lc <= 0:
        return ConditionResult(FAIL, f"{label} has a negative leading coefficient", str(f.lc))
    try:
        verdict = represents_primes(f)
    except IrreducibilityInconclusive as exc:
        g = value_gcd(f, profile)
        if g != 1:
            return ConditionResult(FAIL, f"every integer value of {label} is divisible by {g}", str(g))
        return ConditionResult(UNKNOWN, f"irreducibility of {label} undecided: {exc}")
    if verdict.verdict:
        return ConditionResult(PASS, f"{label} represents primes")
    if not verdict.irreducible:
        return ConditionResult(FAIL, f"{label} is reducible", str(verdict.factor))
    return ConditionResult(
        FAIL, f"every integer value of {label} is divisible by {verdict.value_gcd}", str(verdict.value_gcd)
    )


def rho(c: FamilyCandidate) -> Fraction:
    """deg q / deg r, cross-checked against 2*max(deg y, deg t)/deg r."""
    if c.r.is_constant():
        raise ValueError("rho needs a nonconstant r")
    dq = 0 if c.q.is_constant() else c.q.degree
    value = Fraction(dq, c.r.degree)
    if (
        c.y is not None
        and not c.y.is_zero()
        and not c.t.is_zero()
        and c.D * c.y * c.y == 4 * c.q - c.t * c.t
    ):
        other = Fraction(2 * max(c.y.degree, c.t.degree), c.r.degree)
        if other != value:
            raise InternalInconsistencyError(f"rho expressions disagree: {value} vs {other}")
    return value


def validate(c: FamilyCandidate) -> FamilyDiagnosis:
    conds = {}
    r_ok_shape = not c.r.is_constant()
    conds["i"] = _primes_condition(c.r, "r")
    conds["ii"] = _primes_condition(c.q, "q")

    lhs = c.q + 1 - c.t
    if r_ok_shape:
        quot, rem = poly_divmod(lhs, c.r)
        if rem:
            conds["iii"] = ConditionResult(FAIL, "r does not divide q + 1 - t", f"remainder {rem}")
        else:
            note = ""
            if c.h is not None and c.h != quot:
                note = f"; stored h = {c.h} disagrees with quotient"
            conds["iii"] = ConditionResult(PASS, f"h = {quot}{note}")
        rem4 = poly_divmod(cyclotomic(c.k).compose(c.t - 1), c.r)[1]
        if rem4:
            conds["iv"] = ConditionResult(FAIL, f"r does not divide Phi_{c.k}(t - 1)", f"remainder {rem4}")
        else:
            conds["iv"] = ConditionResult(PASS, f"r | Phi_{c.k}(t - 1)")
    else:
        conds["iii"] = ConditionResult(FAIL, "r is constant", str(c.r))
        conds["iv"] = ConditionResult(FAIL, "r is constant", str(c.r))

    target = 4 * c.q - c.t * c.t
    if not is_squarefree_positive(c.D):
        conds["v"] = ConditionResult(FAIL, f"D = {c.D} is not square-free positive", str(c.D))
    elif c.y is not None and c.D * c.y * c.y == target:
        conds["v"] = ConditionResult(PASS, f"D*y^2 = 4q - t^2 with y = {c.y}")
    else:
        found = poly_sqrt(target / c.D)
        if found is not None:
            conds["v"] = ConditionResult(PASS, f"D*y^2 = 4q - t^2 with recovered y = {found}")
        elif c.y is not None:
            conds["v"] = ConditionResult(
                FAIL, "D*y^2 != 4q - t^2", f"residual {target - c.D * c.y * c.y}"
            )
        else:
            conds["v"] = ConditionResult(FAIL, "(4q - t^2)/D is not a square in Q[x]", str(target / c.D))

    value = rho(c) if r_ok_shape else None
    degrees = {
        "t": _deg(c.t),
        "r": _deg(c.r),
        "q": _deg(c.q),
        "y": _deg(c.y),
        "h": _deg(c.h),
    }
    phi = totient(c.k)
    if degrees["r"] is not None and degrees["t"] is not None:
        degrees["deg_r_eq_2deg_t"] = degrees["r"] == 2 * degrees["t"]
        if degrees["r"] % phi == 0:
            # deg r = phi(k) * n; m = deg t
            degrees["n"] = degrees["r"] // phi
            degrees["m"] = degrees["t"]
    return FamilyDiagnosis(c, conds, value, degrees)


# JSON documents --------------------------------------------------------------


class MalformedFamilyDocument(ValueError):
    pass


FAMILY_POLY_KEYS = ("t", "r", "q", "y", "h")


def family_to_dict(c: FamilyCandidate, extra: Optional[dict] = None) -> dict:
    doc = {"k": c.k, "D": c.D}
    for key in FAMILY_POLY_KEYS:
        p = getattr(c, key)
        if p is not None:
            doc[key] = format_poly(p)
    if c.name:
        doc["name"] = c.name
    if c.source:
        doc["source"] = c.source
    if extra:
        doc.update(extra)
    return doc


def family_from_dict(doc: dict, diagnostic: bool = True) -> FamilyCandidate:
    if not isinstance(doc, dict):
        raise MalformedFamilyDocument("family document must be a JSON object")
    try:
        k, D = doc["k"], doc["D"]
    except KeyError as exc:
        raise MalformedFamilyDocument(f"missing field {exc.args[0]!r}") from None
    if isinstance(k, str):
        k = int(k) if k.lstrip("-").isdigit() else k
    if isinstance(D, str):
        D = int(D) if D.lstrip("-").isdigit() else D
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise MalformedFamilyDocument("k must be a positive integer")
    if not isinstance(D, int) or isinstance(D, bool):
        raise MalformedFamilyDocument("D must be an integer")
    polys = {}
    for key in FAMILY_POLY_KEYS:
        if key not in doc:
            if key in ("t", "r", "q"):
                raise MalformedFamilyDocument(f"missing field {key!r}")
            continue
        if not isinstance(doc[key], str):
            raise MalformedFamilyDocument(f"field {key!r} must be a polynomial string")
        try:
            polys[key] = parse_poly(doc[key])
        except ValueError as exc:
            raise MalformedFamilyDocument(f"field {key!r}: {exc}") from None
    return FamilyCandidate(
        k=k,
        D=D,
        name=str(doc.get("name", "")),
        source=str(doc.get("source", "")),
        diagnostic=diagnostic,
        **polys,
    )


def _fmt_fraction(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def diagnosis_to_dict(d: FamilyDiagnosis) -> dict:
    return {
        "family": family_to_dict(d.candidate),
        "conditions": {
            key: {"status": res.status, "detail": res.detail, "witness": res.witness}
            for key, res in d.conditions.items()
        },
        "rho": _fmt_fraction(d.rho),
        "degrees": d.degrees,
        "is_complete_family": d.is_complete_family,
        "is_ideal": d.is_ideal,
    }
