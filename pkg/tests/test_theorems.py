from fractions import Fraction

import pytest

from bwfamily.exactmath import QPoly, parse_poly
from bwfamily.integrality import integrality_profile
from bwfamily.theorems import (
    CatalogEntry,
    default_catalog,
    exhaustive_small_search,
    run_catalog_entry,
    small_t_polys,
    theorem1_forced_q,
    theorem1_obstruction,
    theorem3_scan,
)

P = parse_poly


class TestForcedForms:
    def test_supersingular(self):
        assert theorem1_forced_q(3).supersingular == P("x^2+2*x+1")
        assert theorem1_forced_q(4).supersingular == P("1/2*x^2+x+1/2")
        assert theorem1_forced_q(6).supersingular == P("1/3*x^2+2/3*x+1/3")

    def test_noncyclotomic(self):
        assert theorem1_forced_q(3).noncyclotomic == P("1/4*x^2+5/4*x+1/4")
        assert theorem1_forced_q(4).noncyclotomic == P("1/4*x^2+x+1/4")
        assert theorem1_forced_q(6).noncyclotomic == P("1/4*x^2+3/4*x+1/4")
        assert [theorem1_forced_q(k).noncyclotomic_dy2 for k in (3, 4, 6)] == [P("3*x"), P("2*x"), P("x")]

    def test_other_k_rejected(self):
        with pytest.raises(ValueError):
            theorem1_forced_q(5)


class TestObstruction:
    def test_k4_table(self):
        rep = theorem1_obstruction(4)
        assert rep.residues_mod4 == {0: 1, 1: 2, 2: 1, 3: 2}
        assert rep.never_integral and rep.certified

    def test_k3_table(self):
        # 4q = X^2 + 5X + 1: X = 0, 1, 2, 3 give 1, 7, 15, 25
        rep = theorem1_obstruction(3)
        assert rep.residues_mod4 == {0: 1, 1: 3, 2: 3, 3: 1}
        assert rep.never_integral and rep.certified

    def test_k6(self):
        rep = theorem1_obstruction(6)
        assert rep.square_constant == Fraction(1, 3)
        assert rep.square_root == P("x+1")
        assert rep.constant_times_square and rep.certified

    @pytest.mark.parametrize("k", [3, 4, 6])
    def test_brute_force_no_integer_values(self, k):
        f = theorem1_forced_q(k).noncyclotomic
        assert not any(f(x).denominator == 1 for x in range(-500, 501))
        assert not integrality_profile(f).represents_integers


class TestCatalog:
    def test_catalog_shape(self):
        cat = default_catalog()
        assert len(cat) >= 12
        assert {(e.k, e.D) for e in cat} == {(8, 1), (8, 2), (12, 1), (12, 3)}
        labels = {(e.k, e.D, e.label) for e in cat}
        for k, D in [(8, 1), (8, 2), (12, 1), (12, 3)]:
            assert (k, D, f"Phi_{k}, zeta=x") in labels

    def test_scan(self):
        scan = theorem3_scan()
        assert len(scan.in_scope) >= 12
        assert scan.ok and not scan.ideal_found
        for res in scan.in_scope:
            d = res.diagnosis
            assert d.rho > 1 or not d.is_complete_family
        assert scan.control.is_ideal and not scan.control.in_scope

    def test_bad_entry_is_out_of_scope(self):
        res = run_catalog_entry(CatalogEntry("reducible", 8, 1, P("x^2-1"), P("x")))
        assert not res.in_scope and res.error


class TestSmallSearch:
    def test_grid_size(self):
        ts = list(small_t_polys(2, 3))
        # deg 1: 7*6, deg 2: 7*7*6
        assert len(ts) == 42 + 294
        assert len(set(ts)) == len(ts)

    @pytest.mark.slow
    def test_no_ideal_family(self):
        rep = exhaustive_small_search()
        assert rep.ok and rep.families_built > 0 and not rep.ideal
