"""Exact arithmetic for Brezing-Weng style pairing-friendly curve families."""

from .cyclo_ring import ResidueElement, ResidueRing, ZetaImage, cyclotomic, totient
from .exactmath import QPoly, X, format_poly, parse_poly
from .family import FamilyCandidate, FamilyDiagnosis, bw_construct, rho, validate
from .instantiate import CurveParams, instantiate_at, scan_bits, scan_range
from .integrality import integrality_profile, represents_primes, value_gcd

__all__ = [
    "CurveParams",
    "FamilyCandidate",
    "FamilyDiagnosis",
    "QPoly",
    "ResidueElement",
    "ResidueRing",
    "X",
    "ZetaImage",
    "bw_construct",
    "cyclotomic",
    "format_poly",
    "instantiate_at",
    "integrality_profile",
    "parse_poly",
    "represents_primes",
    "rho",
    "scan_bits",
    "scan_range",
    "totient",
    "validate",
    "value_gcd",
]
