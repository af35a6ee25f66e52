import json
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bwfamily.instantiate import (
    CurveParams,
    Failure,
    check_params,
    embedding_degree_set,
    instantiate_at,
    scan_bits,
    scan_range,
)
from bwfamily.registry import load_family

BN = load_family("bn")
K4 = load_family("example-k4-d2")


def assert_certified(h: CurveParams):
    assert sympy.isprime(h.r0) and sympy.isprime(h.q0)
    assert h.D * h.y0 ** 2 == 4 * h.q0 - h.t0 ** 2
    assert h.q0 + 1 - h.t0 == h.h0 * h.r0
    assert math.gcd(h.t0, h.q0) == 1
    assert [i for i in range(1, h.k + 1) if pow(h.q0, i, h.r0) == 1] == [h.k]


def test_bn_at_one():
    h = instantiate_at(BN, 1)
    assert (h.t0, h.r0, h.q0, h.y0, h.h0) == (7, 97, 103, 11, 1)
    assert 3 * 11 ** 2 == 4 * 103 - 49
    assert embedding_degree_set(103, 97, 12) == {12}
    assert not h.k_bound_ok and h.r_ge_sqrt_q and h.primality == "deterministic"
    assert_certified(h)


def test_failures():
    res = instantiate_at(BN, 0)
    assert isinstance(res, Failure) and res.reason == "r_not_prime"
    for x0 in range(-5, 6):
        res = instantiate_at(K4, x0)
        assert isinstance(res, Failure) and res.reason == "q_non_integral"


def test_check_params_reasons():
    assert check_params(7, 97, 103, 11, 12, 3) is None
    assert check_params(7, 97, 103, 12, 12, 3) == "cm_equation"
    assert check_params(7, 96, 103, 11, 12, 3) == "r_not_prime"
    assert check_params(7, 97, 121, 11, 12, 3) == "q_prime_power"
    assert check_params(7, 97, 100, 11, 12, 3) == "q_not_prime"
    assert check_params(7, -97, 103, 11, 12, 3) == "nonpositive"


def test_scan_single_point():
    rep = scan_range(BN, 1, 1)
    assert [h.x0 for h in rep.hits] == [1] and rep.accounted()


def test_empty_effective_range():
    rep = scan_range(K4, -100, 100)
    assert not rep.hits and rep.near_misses == {"q_non_integral": 201}
    assert rep.skipped == 201 and rep.accounted()


def test_scan_matches_sympy_recount():
    lo, hi = -10 ** 4, 10 ** 4
    rep = scan_range(BN, lo, hi, seed=1)
    expected = []
    for x0 in range(lo, hi + 1):
        t, r, q = (int(BN.t(x0)), int(BN.r(x0)), int(BN.q(x0)))
        if r > 0 and q > 0 and sympy.isprime(r) and sympy.isprime(q):
            expected.append(x0)
    assert [h.x0 for h in rep.hits] == expected
    assert rep.accounted()
    for h in rep.hits:
        assert_certified(h)


def test_scan_deterministic_and_parallel():
    a = scan_range(BN, -1500, 1500, seed=9)
    b = scan_range(BN, -1500, 1500, seed=9)
    c = scan_range(BN, -1500, 1500, seed=9, workers=3)
    assert a.to_json() == b.to_json() == c.to_json()


def test_scan_bits_small():
    rep = scan_bits(BN, 8, 1)
    assert len(rep.hits) == 1
    h = rep.hits[0]
    assert abs(h.r0.bit_length() - 8) <= 1 and not h.k_bound_ok


def test_scan_bits_32_fixture():
    rep = scan_bits(BN, 32, 1, seed=7)
    assert [h.x0 for h in rep.hits] == [-107]
    h = rep.hits[0]
    assert (h.r0, h.q0) == (4674969529, 4675038223)
    assert 2 ** 31 <= h.r0 <= 2 ** 33
    assert_certified(h)
    assert rep.accounted()


def test_scan_bits_rejects():
    with pytest.raises(ValueError):
        scan_bits(BN, 32, 0)
    with pytest.raises(ValueError):
        scan_bits(BN, 4, 1)


def test_report_json():
    doc = json.loads(json.dumps(scan_range(BN, -3, 3, seed=2).to_json()))
    assert doc["family"] == "bn" and doc["range"] == ["-3", "3"]
    assert all(isinstance(h["q0"], str) for h in doc["hits"])
    assert sum(doc["near_misses"].values()) + len(doc["hits"]) == doc["points"]


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-10 ** 6, max_value=10 ** 6))
def test_hits_are_certified(x0):
    res = instantiate_at(BN, x0, seed=0)
    if isinstance(res, CurveParams):
        assert_certified(res)
    else:
        r, q = int(BN.r(x0)), int(BN.q(x0))
        assert not (sympy.isprime(r) and sympy.isprime(q))
