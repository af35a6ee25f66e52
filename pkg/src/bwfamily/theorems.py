"""Computational side of the nonexistence results for ideal families.

Three pieces:

* the forced q-forms for k = 3, 4, 6 and their obstructions;
* a catalog scan for k = 8, 12 with deg r != 2 deg t;
* an exhaustive desk-scale search over small integer t(x) for k = 3, 4, 6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cyclo_ring import ResidueRing, ZetaImage, cyclotomic
from .exactmath import QPoly, X, poly_sqrt
from .family import (
    FamilyCandidate,
    FamilyDiagnosis,
    UnsupportedSqrtError,
    bw_construct,
    find_sqrt_minus_d,
    validate,
)
from .integrality import IntegralityProfile, integrality_profile, residue_table
from .irreducible import IrreducibilityInconclusive, find_factor

SMALL_K = (3, 4, 6)
# the only D with sqrt(-D) in Q(zeta_k) for k = 3, 4, 6
CYCLOTOMIC_D = {3: 3, 4: 1, 6: 3}


def _check_small_k(k: int):
    if k not in SMALL_K:
        raise ValueError(f"k must be one of {SMALL_K}, got {k}")


@dataclass(frozen=True)
class ForcedForms:
    """q as a polynomial in X = t(x) - 1, on the two branches of the argument."""

    k: int
    supersingular: QPoly
    noncyclotomic: QPoly
    # D*y^2 on the noncyclotomic branch, where h = 1/4
    noncyclotomic_dy2: QPoly


def theorem1_forced_q(k: int) -> ForcedForms:
    _check_small_k(k)
    phi = cyclotomic(k)
    # sqrt(-D) in Q(zeta_k): build the family on Q[X]/Phi_k(X) with zeta = X
    ring = ResidueRing(phi)
    D = CYCLOTOMIC_D[k]
    fam = bw_construct(k, D, ring, ZetaImage(k, ring.gen()))
    # rho = 1 forces h = 1/4, so D*y^2 = Phi_k(X) - (X - 1)^2
    dy2 = phi - (X - 1) ** 2
    noncyc = ((X + 1) ** 2 + dy2) / 4
    return ForcedForms(k, fam.q, noncyc, dy2)


@dataclass(frozen=True)
class ObstructionReport:
    k: int
    forms: ForcedForms
    profile: IntegralityProfile
    # X mod 4 -> (4 q)(X) mod 4 for the noncyclotomic form
    residues_mod4: dict
    never_integral: bool
    square_constant: Fraction
    square_root: Optional[QPoly]
    square_factor_witness: Optional[QPoly]

    @property
    def constant_times_square(self) -> bool:
        return self.square_root is not None and not self.square_root.is_constant()

    @property
    def certified(self) -> bool:
        return self.never_integral and self.constant_times_square


def theorem1_obstruction(k: int) -> ObstructionReport:
    forms = theorem1_forced_q(k)
    nc = forms.noncyclotomic
    profile = integrality_profile(nc)
    table = residue_table(nc, 4) if 4 % profile.d == 0 else residue_table(nc, profile.d)
    ss = forms.supersingular
    c = ss.lc
    root = poly_sqrt(ss / c)
    witness = find_factor(ss) if root is not None and not root.is_constant() else None
    return ObstructionReport(
        k=k,
        forms=forms,
        profile=profile,
        residues_mod4=table,
        never_integral=not profile.represents_integers,
        square_constant=c,
        square_root=root,
        square_factor_witness=witness,
    )


# catalog scan for k = 8, 12 ------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    k: int
    D: int
    r: QPoly
    zeta: QPoly


# D with sqrt(-D) in Q(zeta_k)
CATALOG_D = {8: (1, 2), 12: (1, 3)}


def _cyclotomic_zetas(k: int) -> list:
    """Every primitive k-th root x^j (gcd(j, k) = 1) reduced in Q[x]/Phi_k."""
    from math import gcd

    phi = cyclotomic(k)
    out = []
    for j in range(1, k):
        if gcd(j, k) == 1:
            out.append(("x" if j == 1 else f"x^{j}", (X ** j) % phi))
    return out


# quadratic substitutions u(x) with Phi_k(u) irreducible of degree 8
_SUBSTITUTIONS = ("x^2", "x^2+1", "2*x^2", "x^2+x", "x^2-2", "3*x^2+1")


def default_catalog() -> list:
    entries = []
    for k in (8, 12):
        phi = cyclotomic(k)
        for label, z in _cyclotomic_zetas(k):
            for D in CATALOG_D[k]:
                entries.append(CatalogEntry(f"Phi_{k}, zeta={label}", k, D, phi, z))
        for u_text in _SUBSTITUTIONS:
            u = QPoly.parse(u_text)
            r = phi.compose(u)
            try:
                if find_factor(r) is not None:
                    continue
            except IrreducibilityInconclusive:
                continue
            for D in CATALOG_D[k]:
                entries.append(CatalogEntry(f"Phi_{k}({u_text}), zeta={u_text}", k, D, r.primitive_part(), u))
    return entries


def bn_control() -> CatalogEntry:
    return CatalogEntry(
        "BN control (deg r = 2 deg t)",
        12,
        3,
        QPoly.parse("36*x^4+36*x^3+18*x^2+6*x+1"),
        QPoly.parse("6*x^2"),
    )


@dataclass
class CatalogResult:
    entry: CatalogEntry
    in_scope: bool
    candidate: Optional[FamilyCandidate] = None
    diagnosis: Optional[FamilyDiagnosis] = None
    error: str = ""

    @property
    def is_ideal(self) -> bool:
        return self.diagnosis is not None and self.diagnosis.is_ideal


def run_catalog_entry(entry: CatalogEntry) -> CatalogResult:
    try:
        ring = ResidueRing(entry.r)
        z = ZetaImage(entry.k, ring(entry.zeta))
        cand = bw_construct(entry.k, entry.D, ring, z)
    except (ValueError, IrreducibilityInconclusive) as exc:
        return CatalogResult(entry, in_scope=False, error=str(exc))
    in_scope = cand.r.degree != 2 * cand.t.degree
    return CatalogResult(entry, in_scope, cand, validate(cand))


@dataclass
class CatalogScan:
    results: list
    control: Optional[CatalogResult] = None

    @property
    def in_scope(self) -> list:
        return [r for r in self.results if r.in_scope]

    @property
    def ideal_found(self) -> list:
        return [r for r in self.in_scope if r.is_ideal]

    @property
    def ok(self) -> bool:
        return bool(self.in_scope) and not self.ideal_found


def theorem3_scan(catalog: Optional[list] = None, with_control: bool = True) -> CatalogScan:
    entries = default_catalog() if catalog is None else catalog
    results = [run_catalog_entry(e) for e in entries]
    control = run_catalog_entry(bn_control()) if with_control else None
    return CatalogScan(results, control)


# exhaustive small search for k = 3, 4, 6 -----------------------------------------


@dataclass
class SmallSearchReport:
    coefficient_bound: int
    max_degree: int
    t_polys_tried: int = 0
    rings_irreducible: int = 0
    rings_reducible: int = 0
    rings_inconclusive: int = 0
    families_built: int = 0
    no_sqrt: int = 0
    complete: int = 0
    ideal: list = field(default_factory=list)
    by_k: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.ideal and self.families_built > 0


def small_t_polys(max_degree: int = 2, bound: int = 3):
    """Integer t(x) with 1 <= deg t <= max_degree and |coefficients| <= bound."""
    rng = range(-bound, bound + 1)
    for deg in range(1, max_degree + 1):
        for lower in itertools.product(rng, repeat=deg):
            for lead in rng:
                if lead == 0:
                    continue
                yield QPoly(list(lower) + [lead])


def exhaustive_small_search(
    ks=SMALL_K, max_degree: int = 2, bound: int = 3, discriminants=(1, 2, 3)
) -> SmallSearchReport:
    """Build every BW family with r = Phi_k(t - 1) irreducible over the small t grid.

    Since phi(k) = 2, an irreducible factor of Phi_k(t - 1) of degree
    >= 2 deg t must be the whole polynomial. Every D whose square root is
    reachable from the built-in table in that field is tried.
    """
    report = SmallSearchReport(bound, max_degree)
    for k in ks:
        _check_small_k(k)
        counts = {"rings": 0, "families": 0, "complete": 0, "ideal": 0}
        phi = cyclotomic(k)
        for t in small_t_polys(max_degree, bound):
            report.t_polys_tried += 1
            r = phi.compose(t - 1).primitive_part()
            try:
                factor = find_factor(r)
            except IrreducibilityInconclusive:
                report.rings_inconclusive += 1
                continue
            if factor is not None:
                report.rings_reducible += 1
                continue
            report.rings_irreducible += 1
            counts["rings"] += 1
            ring = ResidueRing(r, check=False)
            z = ZetaImage(k, ring(t - 1))
            for D in discriminants:
                try:
                    s, _ = find_sqrt_minus_d(D, z)
                except UnsupportedSqrtError:
                    report.no_sqrt += 1
                    continue
                cand = bw_construct(k, D, ring, z, s)
                diag = validate(cand)
                report.families_built += 1
                counts["families"] += 1
                if diag.is_complete_family:
                    report.complete += 1
                    counts["complete"] += 1
                if diag.is_ideal:
                    report.ideal.append(cand)
                    counts["ideal"] += 1
        report.by_k[k] = counts
    return report
