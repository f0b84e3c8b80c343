from fractions import Fraction
from math import comb

import pytest

from gkzint.corpus import corpus
from gkzint.errors import InsufficientTruncation, NotPointed
from gkzint.geometry import orthant_is_trivial
from gkzint.integrality import (
    dwork_criterion,
    dwork_series,
    exp_integrality,
    mirror_coordinate,
    mirror_map,
    verify_congruence_4_3_to_4_8,
)
from gkzint.seriesring import ConeSeries, exp_series, inverse, mul
from gkzint.solutions import build_gk

X2 = (-2, 1, 1)


def catalan(t):
    return comb(2 * t, t) // (t + 1)


def along(series, r, lo, hi):
    return [series.coefficient(tuple(t * x for x in r)) for t in range(lo, hi + 1)]


class TestDwork:
    def test_E1_p3(self, E1):
        gk = build_gk(E1, 2, 9)
        rep = dwork_criterion(gk, 3, 9)
        assert rep.passed
        d = dwork_series(gk, 3, 9)
        # 3 * (-1)^(m-1) / m has margin 0 whenever 3 does not divide m
        for m in (1, 2, 4, 5, 7, 8):
            c = d.coefficient((m, -m))
            assert c == Fraction(3 * (-1) ** (m - 1), m)
        assert rep.witness["margin"] == 0

    def test_E2_p2(self, E2):
        assert dwork_criterion(build_gk(E2, 1, 10), 2, 10).passed

    def test_zero_series(self, E3):
        rep = dwork_criterion(build_gk(E3, 1, 5), 5, 5)
        assert rep.passed and rep.witness is None

    def test_insufficient(self, E2):
        with pytest.raises(InsufficientTruncation):
            dwork_criterion(build_gk(E2, 1, 4), 2, 6)

    def test_detects_non_integral_exponential(self, E1):
        # 2 * G_2 = 2 log(1 + x) has exp = (1 + x)^2, still integral;
        # G_2 / 2 has exp = sqrt(1 + x), which is not 2-integral
        gk = build_gk(E1, 2, 8)
        half = type(gk)(gk.k, gk.series * Fraction(1, 2), gk.m_max)
        assert not dwork_criterion(half, 2, 8).passed
        assert not exp_integrality(half, 8).passed


class TestExp:
    def test_E1(self, E1):
        rep = exp_integrality(build_gk(E1, 2, 10), 10)
        assert rep.passed
        assert rep.series.terms == {(0, 0): 1, (1, -1): 1}

    def test_E2_catalan(self, E2):
        rep = exp_integrality(build_gk(E2, 1, 6), 6)
        assert along(rep.series, X2, 0, 6) == [1, -1, -1, -2, -5, -14, -42]

    def test_zero(self, E3):
        rep = exp_integrality(build_gk(E3, 2, 4), 4)
        assert rep.series == ConeSeries.one(rep.series.grading, 4)

    def test_inverse_roundtrip(self):
        for cfg in corpus():
            for k in range(1, cfg.N + 1):
                e = exp_series(build_gk(cfg, k, 8).series)
                assert mul(e, inverse(e)) == ConeSeries.one(e.grading, e.bound)


class TestMirror:
    def test_E2(self, E2):
        series, rep = mirror_map(E2, X2, 6)
        assert rep.passed and rep.details["product_matches_direct_exp"]
        q = mirror_coordinate(series, X2)
        # q = x C(x)^2 = C(x) - 1
        assert along(q, X2, 1, 7) == [catalan(t) for t in range(1, 8)]

    def test_zero_relation(self, E2):
        series, rep = mirror_map(E2, (0, 0, 0), 6)
        assert series.terms == {(0, 0, 0): 1} and rep.passed

    def test_E1_not_pointed(self, E1):
        with pytest.raises(NotPointed):
            mirror_map(E1, (1, -1), 5)

    def test_E5_basis(self, E5):
        for rel in [(-2, 1, 1, 0), (1, -2, 0, 1), (-1, -1, 1, 1)]:
            series, rep = mirror_map(E5, rel, 8)
            assert rep.passed, rep.witness


class TestCongruenceRoute:
    def test_E2_p2_integral(self, E2):
        rep = verify_congruence_4_3_to_4_8(E2, 1, 1, [2])
        assert rep.passed and rep.details["integral"] == 1

    def test_E2_p3_difference(self, E2):
        # (1/2)(C(6;3,3) - C(2;1,1)) = 9
        assert (comb(6, 3) - comb(2, 1)) // 2 == 9
        assert verify_congruence_4_3_to_4_8(E2, 1, 1, [3]).passed

    def test_E1_exceptional(self, E1):
        rep = verify_congruence_4_3_to_4_8(E1, 2, 1, [2])
        assert rep.passed and rep.details["exceptional"] == 1 and rep.details["sign_flips"] == 1

    def test_routes_agree_on_corpus(self):
        primes = [2, 3, 5, 7, 11, 13]
        for cfg in corpus():
            for k in range(1, cfg.N + 1):
                if orthant_is_trivial(cfg, k):
                    continue
                gk = build_gk(cfg, k, 12)
                series_route = {p: dwork_criterion(gk, p, 12).verdict for p in primes}
                valuation_route = verify_congruence_4_3_to_4_8(cfg, k, 12, primes).per_prime
                assert series_route == valuation_route == {p: "pass" for p in primes}
