from fractions import Fraction
from math import comb

import pytest

from gkzint.config import kernel_basis
from gkzint.corpus import corpus
from gkzint.errors import NotPointed
from gkzint.geometry import orthant_is_trivial
from gkzint.seriesring import ConeSeries, LogSeries
from gkzint.solutions import (
    build_gk,
    build_log_solution,
    check_box,
    check_euler,
    gk_coefficient,
    log_plus_gk,
    log_solution,
    relation_slab,
)


def x_coeffs(gk, r, upto):
    return [gk.series.coefficient(tuple(t * x for x in r)) for t in range(1, upto + 1)]


class TestBuildGk:
    def test_E1_k2(self, E1):
        gk = build_gk(E1, 2, 3)
        assert gk.series.terms == {(1, -1): 1, (2, -2): Fraction(-1, 2), (3, -3): Fraction(1, 3)}

    def test_E2_k1(self, E2):
        gk = build_gk(E2, 1, 3)
        assert x_coeffs(gk, (-2, 1, 1), 3) == [-1, Fraction(-3, 2), Fraction(-10, 3)]
        assert len(gk.series.terms) == 3

    @pytest.mark.parametrize("k", [1, 2])
    def test_E3_zero(self, E3, k):
        assert build_gk(E3, k, 5).is_zero()

    def test_E2_closed_form(self, E2):
        gk = build_gk(E2, 1, 12)
        expected = [Fraction(-comb(2 * t, t), 2 * t) for t in range(1, 13)]
        assert x_coeffs(gk, (-2, 1, 1), 12) == expected

    def test_E4_is_log_of_linear(self, E4):
        # G_3 = log(1 + (l1 + l2)/l3): coefficient of l1^a l2^b l3^-m is (-1)^(m-1)/m * C(m, a)
        gk = build_gk(E4, 3, 6)
        for (a, b, c), coeff in gk.series.terms.items():
            m = -c
            assert coeff == Fraction((-1) ** (m - 1) * comb(m, a), m)
        assert len(gk.series.terms) == sum(m + 1 for m in range(1, 7))

    def test_coefficient_formula(self):
        assert gk_coefficient((-4, 2, 2), 1) == Fraction(-3, 2)
        assert gk_coefficient((1, -1), 2) == 1

    def test_no_constant_term(self):
        for cfg in corpus():
            for k in range(1, cfg.N + 1):
                assert build_gk(cfg, k, 6).series.constant_term() == 0


class TestLogSolution:
    def test_E2(self, E2):
        f = build_log_solution(E2, (-2, 1, 1), 4)
        g1 = build_gk(E2, 1, 4).series
        expected = (
            LogSeries.log(1, g1.grading, 4) * -2
            + LogSeries.log(2, g1.grading, 4)
            + LogSeries.log(3, g1.grading, 4)
            + LogSeries.from_series(g1 * -2)
        )
        assert f == expected

    def test_zero_relation(self, E2):
        assert build_log_solution(E2, (0, 0, 0), 4).is_zero()

    def test_E1_not_pointed(self, E1):
        with pytest.raises(NotPointed):
            build_log_solution(E1, (1, -1), 4)
        with pytest.raises(NotPointed):
            build_log_solution(E1, (1, -1), 4, allow_duplicates=True)

    def test_mixed_gradings_rejected(self, E1):
        gks = [build_gk(E1, 1, 3), build_gk(E1, 2, 3)]
        with pytest.raises(NotPointed):
            log_solution(E1, (1, -1), gks)


class TestEuler:
    def test_gk_termwise(self, E2):
        rep = check_euler(E2, build_gk(E2, 1, 6))
        assert rep.passed and rep.details["mode"] == "termwise"

    def test_constant(self, E2):
        assert check_euler(E2, ConeSeries.one((0, 1, 1), 3)).passed

    def test_monomial_fails(self, E2):
        rep = check_euler(E2, ConeSeries({(1, 0, 0): 1}, (0, 1, 1), 3))
        assert not rep.passed
        assert rep.witness["operator"] == 1

    def test_log_lambda_k_fails(self, E2):
        f = log_plus_gk(build_gk(E2, 1, 4))
        assert not check_euler(E2, f).passed

    def test_log_solution_passes(self, E5):
        for rel in kernel_basis(E5):
            assert check_euler(E5, build_log_solution(E5, tuple(rel), 5)).passed


class TestBox:
    def test_E1_log_plus_g2(self, E1):
        f = log_plus_gk(build_gk(E1, 2, 8))
        rep = check_box(E1, f, [(1, -1)])
        assert rep.passed
        assert rep.valid_level >= 7

    def test_E2_solution(self, E2):
        f = build_log_solution(E2, (-2, 1, 1), 8)
        rep = check_box(E2, f, [(-2, 1, 1)])
        assert rep.passed and rep.valid_level == 8

    def test_constant(self, E2):
        assert check_box(E2, ConeSeries.one((0, 1, 1), 3), relation_slab(E2)).passed

    def test_detects_wrong_coefficient(self, E1):
        gk = build_gk(E1, 2, 6)
        terms = dict(gk.series.terms)
        terms[(3, -3)] += 1
        broken = LogSeries.log(2, gk.grading, 6) + LogSeries.from_series(gk.series.like(terms))
        rep = check_box(E1, broken, [(1, -1)])
        assert not rep.passed
        assert rep.witness is not None

    def test_gk_alone_fails_box(self, E1):
        # without log(lambda_k) the box operator does not vanish
        gk = build_gk(E1, 2, 6)
        assert not check_box(E1, gk.series, [(1, -1)]).passed

    def test_all_corpus(self):
        for cfg in corpus():
            rels = relation_slab(cfg, 3)
            for k in range(1, cfg.N + 1):
                if orthant_is_trivial(cfg, k):
                    continue
                rep = check_box(cfg, log_plus_gk(build_gk(cfg, k, 6)), rels)
                assert rep.passed, (cfg.name, k, rep.witness)
