import json
from math import gcd
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bwfamily.cyclo_ring import ResidueRing, ZetaImage, cyclotomic
from bwfamily.exactmath import QPoly, parse_poly
from bwfamily.family import (
    SQRT_MINUS_D_TABLE,
    FamilyCandidate,
    InconsistentFamilyError,
    InvalidSqrtError,
    MalformedFamilyDocument,
    UnsupportedSqrtError,
    bw_construct,
    diagnosis_to_dict,
    family_from_dict,
    family_to_dict,
    find_sqrt_minus_d,
    rho,
    sqrt_minus_d,
    validate,
    verify_sqrt,
)
from bwfamily.registry import BUILTIN, load_document, load_family

P = parse_poly
R_BN = P("36*x^4+36*x^3+18*x^2+6*x+1")


UNIT_EXPONENTS = [(k, j) for k in (3, 4, 6, 8, 12) for j in range(1, k) if gcd(j, k) == 1]


def make(k, D, r, zeta, s=None):
    ring = ResidueRing(P(r))
    z = ZetaImage(k, ring(P(zeta)))
    return bw_construct(k, D, ring, z, ring(P(s)) if s else None)


def bn():
    return make(12, 3, str(R_BN), "6*x^2")


class TestSqrtTable:
    @pytest.mark.parametrize("key", sorted(SQRT_MINUS_D_TABLE))
    def test_entries_square_to_minus_d(self, key):
        k, D = key
        ring = ResidueRing(cyclotomic(k))
        s = sqrt_minus_d(k, D, ZetaImage(k, ring.gen()))
        assert s * s == -D

    def test_examples(self):
        K = ResidueRing(P("x^4+1"))
        assert sqrt_minus_d(4, 1, ZetaImage(4, K("x^2"))) == K("x^2")
        assert sqrt_minus_d(8, 2, ZetaImage(8, K.gen())) == K("x^3+x")
        L = ResidueRing(P("x^4-x^2+1"))
        assert sqrt_minus_d(12, 1, ZetaImage(12, L.gen())) == L("x^3")

    def test_unsupported(self):
        ring = ResidueRing(cyclotomic(5))
        with pytest.raises(UnsupportedSqrtError):
            sqrt_minus_d(5, 7, ZetaImage(5, ring.gen()))
        with pytest.raises(UnsupportedSqrtError):
            find_sqrt_minus_d(7, ZetaImage(5, ring.gen()))

    def test_verify(self):
        assert verify_sqrt(ResidueRing(P("x^4+1"))("x+x^3"), 2)
        assert verify_sqrt(ResidueRing(P("x^2+1")).gen(), 1)
        assert not verify_sqrt(ResidueRing(P("x^4+1")).gen(), 1)

    def test_fallback_through_generator(self):
        # Q(zeta_4) inside Q(zeta_8): sqrt(-2) comes from the k=8 entry at x
        K = ResidueRing(P("x^4+1"))
        s, note = find_sqrt_minus_d(2, ZetaImage(4, K("x^2")))
        assert s * s == -2 and "at x" in note


class TestConstruct:
    def test_bn(self):
        c = bn()
        assert c.t == P("6*x^2+1")
        assert c.r == R_BN
        assert c.q == P("36*x^4+36*x^3+24*x^2+6*x+1")
        assert c.y == P("6*x^2+4*x+1")
        assert c.h == QPoly([1])

    def test_example_k4(self):
        c = make(4, 2, "x^4+1", "x^2")
        assert (c.t, c.y, c.q) == (P("x^2+1"), P("x"), P("1/4*x^4+x^2+1/4"))

    def test_example_k6(self):
        c = make(6, 1, "x^4-x^2+1", "x^2")
        assert (c.t, c.y, c.q) == (P("x^2+1"), P("x"), P("1/4*x^4+3/4*x^2+1/4"))

    def test_explicit_sqrt(self):
        c = make(4, 2, "x^4+1", "x^2", "x^3+x")
        assert c.q == P("1/4*x^4+x^2+1/4")
        with pytest.raises(InvalidSqrtError):
            make(4, 2, "x^4+1", "x^2", "x")

    def test_bad_d(self):
        with pytest.raises(ValueError):
            make(12, 12, str(R_BN), "6*x^2")

    def test_inconsistent_candidate(self):
        with pytest.raises(InconsistentFamilyError):
            FamilyCandidate(12, 3, P("6*x^2+1"), R_BN, P("36*x^4+36*x^3+24*x^2+6*x+2"))

    @pytest.mark.parametrize("k,j", UNIT_EXPONENTS)
    def test_identities_on_cyclotomic_rings(self, k, j):
        ring = ResidueRing(cyclotomic(k))
        z = ZetaImage(k, ring.gen() ** j)
        for D in sorted({d for kk, d in SQRT_MINUS_D_TABLE if kk == k}):
            c = bw_construct(k, D, ring, z)
            assert c.h * c.r == c.q + 1 - c.t
            assert D * c.y * c.y == 4 * c.q - c.t * c.t
            assert (cyclotomic(k).compose(c.t - 1) % c.r).is_zero()
            assert c.y.lc > 0


class TestValidate:
    def test_bn_ideal(self):
        d = validate(bn())
        assert all(res.passed for res in d.conditions.values())
        assert d.rho == 1 and d.is_complete_family and d.is_ideal
        assert d.degrees["deg_r_eq_2deg_t"]

    def test_example_k4(self):
        d = validate(make(4, 2, "x^4+1", "x^2"))
        assert d.failing() == ["ii"]
        assert d.rho == 1 and not d.is_ideal

    def test_tampered_q(self):
        c = bn()
        bad = FamilyCandidate(12, 3, c.t, c.r, c.q + 1, y=c.y, h=c.h, diagnostic=True)
        d = validate(bad)
        assert d.conditions["iii"].status == "fail" and d.conditions["iii"].witness
        assert d.conditions["v"].status == "fail" and d.conditions["v"].witness
        assert not d.is_complete_family

    def test_rho(self):
        assert rho(bn()) == 1
        c = make(8, 1, "x^4+1", "x")
        assert c.t == P("x+1") and c.y.degree == 3
        assert rho(c) == Fraction(3, 2)
        degenerate = FamilyCandidate(4, 1, P("x"), P("x^2+1"), QPoly([5]), diagnostic=True)
        assert rho(degenerate) == 0

    def test_rho_cross_check(self):
        for name in BUILTIN:
            c = load_family(name)
            assert rho(c) == Fraction(2 * max(c.y.degree, c.t.degree), c.r.degree)


class TestDocuments:
    @pytest.mark.parametrize("name", BUILTIN)
    def test_registry_loads(self, name):
        c = load_family(name)
        assert c.name == name
        doc = load_document(name)
        assert family_to_dict(c)["q"] == doc["q"]

    @pytest.mark.parametrize("name", BUILTIN)
    def test_round_trip(self, name):
        c = load_family(name)
        doc = json.loads(json.dumps(family_to_dict(c), sort_keys=True))
        assert family_from_dict(doc) == c
        assert family_to_dict(family_from_dict(doc)) == doc
        d = diagnosis_to_dict(validate(c))
        assert json.loads(json.dumps(d, sort_keys=True)) == d

    @pytest.mark.parametrize(
        "doc",
        [[], {"D": 3, "t": "x", "r": "x", "q": "x"}, {"k": 12, "D": 3, "t": "x", "r": "x"},
         {"k": 0, "D": 3, "t": "x", "r": "x", "q": "x"}, {"k": 12, "D": 3, "t": "x^", "r": "x", "q": "x"},
         {"k": 12, "D": 3, "t": 5, "r": "x", "q": "x"}],
    )
    def test_malformed(self, doc):
        with pytest.raises(MalformedFamilyDocument):
            family_from_dict(doc)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(sorted(SQRT_MINUS_D_TABLE)), st.integers(1, 11))
    def test_constructed_round_trip(self, key, j):
        k, D = key
        if gcd(j, k) != 1:
            j = 1
        ring = ResidueRing(cyclotomic(k))
        c = bw_construct(k, D, ring, ZetaImage(k, ring.gen() ** j))
        assert family_from_dict(json.loads(json.dumps(family_to_dict(c)))) == c
