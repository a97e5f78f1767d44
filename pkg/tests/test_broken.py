"""Broken-line enumeration, bending factors, structure constants."""

import pytest

from skeinscatter.alaurent import ALaurent, a_power
from skeinscatter.base import BPoint, canonicalize, f_norm
from skeinscatter.broken import (bend_factor, enumerate_broken_lines,
                                 points_up_to, product_theta,
                                 structure_constant)
from skeinscatter.coeffpoly import CoeffPoly
from skeinscatter.diagrams import (S04, S11, choose_basepoint, ray_series,
                                   rays_up_to)

ONE04 = CoeffPoly.one("S04")
R10 = CoeffPoly.var("S04", "R10")
R11 = CoeffPoly.var("S04", "R11")
Z = CoeffPoly.var("S11", "z")


class TestBendFactor:
    def test_s11_single_crossing_amount_two(self):
        series = ray_series(S11, BPoint(0, 1), 2)
        assert bend_factor(series, 1, 2, 1) == Z

    def test_s04_double_crossing_amount_one(self):
        series = ray_series(S04, BPoint(1, 0), 2)
        got = bend_factor(series, 2, 1, 2)
        assert got == R10 * CoeffPoly.const("S04", ALaurent({2: 1, -2: 1}))

    def test_empty_product(self):
        series = ray_series(S04, BPoint(1, 0), 2)
        assert bend_factor(series, 0, 0, 2) == ONE04

    def test_amount_zero_is_one(self):
        series = ray_series(S04, BPoint(1, 1), 3)
        for N in range(4):
            assert bend_factor(series, N, 0, 2) == ONE04

    def test_matches_q_binomial_aggregation(self):
        # a wall 1 + c1 x crossed N times: the amount-k factor must be
        # the symmetrized binomial [N choose k]_{A^mu} times c1^k
        from skeinscatter.alaurent import qbinom
        from skeinscatter.coeffpoly import RaySeries
        series = RaySeries(3, [ONE04, R11, CoeffPoly.zero("S04"),
                               CoeffPoly.zero("S04")])
        for N in range(1, 5):
            for k in range(0, min(N, 3) + 1):
                got = bend_factor(series, N, k, 2)
                expect = (R11 ** k) * CoeffPoly.const("S04", qbinom(N, k))
                assert got == expect

    def test_truncation_guard(self):
        series = ray_series(S04, BPoint(1, 0), 2)
        with pytest.raises(IndexError):
            bend_factor(series, 1, 3, 2)

    def test_positivity(self):
        s04 = ray_series(S04, BPoint(0, 1), 4)
        s11 = ray_series(S11, BPoint(0, 1), 4)
        for N in range(0, 5):
            for k in range(0, 5):
                assert bend_factor(s04, N, k, 2).is_nonnegative()
                assert bend_factor(s11, N, k, 1).is_nonnegative()


class TestEnumeration:
    def test_budget_zero_single_straight_trace(self):
        Q = choose_basepoint(BPoint(2, 0), (), "left")
        traces = enumerate_broken_lines(S04, BPoint(1, 0), Q, 0)
        assert len(traces) == 1
        tr = traces[0]
        assert tr.final_exponent == (1, 0)
        assert tr.coefficient == ONE04
        assert tr.events == ()
        assert tr.cost == 0

    def test_r11_bend_exists(self):
        # charge (0,1), endpoint just below-right of the (1,1) line:
        # one trace bends once at the (1,1) wall with factor R11 and
        # final exponent (-1, 0)
        lines = rays_up_to(2)
        Q = choose_basepoint(BPoint(1, 0), lines, "left")
        traces = enumerate_broken_lines(S04, BPoint(0, 1), Q, 2)
        bent = [t for t in traces if t.final_exponent == (-1, 0)]
        assert len(bent) == 1
        tr = bent[0]
        assert tr.coefficient == R11
        assert len(tr.events) == 1
        pt, w, ell, factor = tr.events[0]
        assert w == (1, 1) and ell == 1 and factor == R11
        assert pt[0] == pt[1] > 0

    def test_s11_has_no_amount_one_bend(self):
        lines = rays_up_to(2)
        Q = choose_basepoint(BPoint(1, 0), lines, "left")
        traces = enumerate_broken_lines(S11, BPoint(0, 1), Q, 2)
        for t in traces:
            for _, _, ell, _ in t.events:
                assert ell != 1

    def test_bookkeeping_invariant(self):
        lines = rays_up_to(4)
        for charge in (BPoint(1, 0), BPoint(0, 1), BPoint(1, 1), BPoint(2, 1)):
            Q = choose_basepoint(BPoint(1, 1), lines, "right")
            for tr in enumerate_broken_lines(S04, charge, Q, 4):
                sx, sy = tr.final_exponent
                for _, w, ell, _ in tr.events:
                    sx += ell * w[0]
                    sy += ell * w[1]
                assert canonicalize((sx, sy)) == tr.charge
                coeff = ONE04
                cost = 0
                for _, w, ell, factor in tr.events:
                    coeff = coeff * factor
                    cost += f_norm(w) * ell
                assert coeff == tr.coefficient
                assert cost == tr.cost <= 4

    def test_events_points_lie_on_their_walls(self):
        lines = rays_up_to(3)
        Q = choose_basepoint(BPoint(0, 1), lines, "left")
        for tr in enumerate_broken_lines(S04, BPoint(1, 1), Q, 3):
            for pt, w, _, _ in tr.events:
                assert pt[0] * w[1] == pt[1] * w[0]
                assert pt[0] * w[0] + pt[1] * w[1] > 0

    def test_rejects_bad_basepoint(self):
        with pytest.raises(ValueError):
            enumerate_broken_lines(S04, BPoint(1, 0), (5, 5), 2)
        with pytest.raises(ValueError):
            enumerate_broken_lines(S04, BPoint(0, 0), (7, 3), 2)


class TestStructureConstants:
    def test_hand_values(self):
        assert structure_constant(S04, BPoint(1, 0), BPoint(0, 1),
                                  BPoint(1, 1)) == CoeffPoly.const("S04", a_power(2))
        assert structure_constant(S04, BPoint(1, 0), BPoint(1, 0),
                                  BPoint(0, 0)) == CoeffPoly.const("S04", 2)
        assert structure_constant(S11, BPoint(1, 0), BPoint(0, 1),
                                  BPoint(-1, 1)) == CoeffPoly.const("S11", a_power(-1))

    def test_kronecker_for_unit(self):
        assert structure_constant(S04, BPoint(0, 0), BPoint(2, 1),
                                  BPoint(2, 1)) == ONE04
        assert structure_constant(S04, BPoint(0, 0), BPoint(2, 1),
                                  BPoint(1, 1)).is_zero()
        assert structure_constant(S04, BPoint(2, 1), BPoint(0, 0),
                                  BPoint(2, 1)) == ONE04

    def test_negative_budget_vanishes(self):
        assert structure_constant(S04, BPoint(1, 0), BPoint(0, 1),
                                  BPoint(3, 1)).is_zero()


class TestProducts:
    def test_v1_v2(self):
        e = product_theta(S04, BPoint(1, 0), BPoint(0, 1))
        assert e.terms == {
            BPoint(1, 1): CoeffPoly.const("S04", a_power(2)),
            BPoint(-1, 1): CoeffPoly.const("S04", a_power(-2)),
            BPoint(0, 0): R11,
        }

    def test_chebyshev_ladder(self):
        sq = product_theta(S04, BPoint(1, 0), BPoint(1, 0))
        assert sq.terms == {BPoint(2, 0): ONE04,
                            BPoint(0, 0): CoeffPoly.const("S04", 2)}
        for n in range(2, 6):
            e = product_theta(S04, BPoint(1, 0), BPoint(n, 0))
            assert e.terms == {BPoint(n + 1, 0): ONE04,
                               BPoint(n - 1, 0): ONE04}

    def test_s11_v1_v2(self):
        e = product_theta(S11, BPoint(1, 0), BPoint(0, 1))
        assert e.terms == {
            BPoint(1, 1): CoeffPoly.const("S11", a_power(1)),
            BPoint(-1, 1): CoeffPoly.const("S11", a_power(-1)),
        }

    def test_unit(self):
        e = product_theta(S04, BPoint(0, 0), BPoint(2, 1))
        assert e.terms == {BPoint(2, 1): ONE04}

    def test_support_bound_and_leading_term(self):
        # nonzero targets satisfy F(p) <= F(p1)+F(p2), with the top level
        # reached only at p1+p2 when both lie in a common cone
        cases = [(BPoint(1, 0), BPoint(1, 1), True),
                 (BPoint(2, 1), BPoint(1, 2), True),
                 (BPoint(1, 0), BPoint(-1, 1), False),
                 (BPoint(2, 1), BPoint(-1, 1), False)]
        for p1, p2, same_cone in cases:
            e = product_theta(S04, p1, p2)
            top = f_norm(p1) + f_norm(p2)
            for p, c in e.terms.items():
                assert f_norm(p) <= top
                if f_norm(p) == top:
                    assert same_cone and p == canonicalize(
                        (p1.m + p2.m, p1.n + p2.n))
            if same_cone:
                psum = canonicalize((p1.m + p2.m, p1.n + p2.n))
                from skeinscatter.base import det2
                expected = CoeffPoly.const("S04", a_power(2 * det2(p1, p2)))
                assert e.coeff(psum) == expected
