"""Wall functions, relevant rays, basepoint selection."""

import pytest

from skeinscatter.alaurent import ALaurent
from skeinscatter.base import BPoint, det2, f_norm
from skeinscatter.coeffpoly import CoeffPoly, s04_to_s11
from skeinscatter.diagrams import (S04, S11, choose_basepoint, config,
                                   ray_series, rays_up_to, relevant_rays,
                                   sector_directions, target_lift)

R10 = CoeffPoly.var("S04", "R10")
R01 = CoeffPoly.var("S04", "R01")
R11 = CoeffPoly.var("S04", "R11")
Y = CoeffPoly.var("S04", "y")
Z = CoeffPoly.var("S11", "z")


class TestRaySeries:
    def test_s04_horizontal(self):
        s = ray_series(S04, BPoint(1, 0), 2)
        assert list(s.coeffs) == [CoeffPoly.one("S04"), R10, Y]

    def test_s04_diagonal(self):
        s = ray_series(S04, BPoint(1, 1), 1)
        assert list(s.coeffs) == [CoeffPoly.one("S04"), R11]

    def test_s11(self):
        s = ray_series(S11, BPoint(0, 1), 3)
        zero = CoeffPoly.zero("S11")
        assert list(s.coeffs) == [CoeffPoly.one("S11"), zero, Z, zero]

    def test_s04_depends_only_on_class_mod_2(self):
        for order in (3, 5):
            assert ray_series(S04, BPoint(1, 0), order) == \
                ray_series(S04, BPoint(3, 2), order) == \
                ray_series(S04, BPoint(1, 2), order) == \
                ray_series(S04, BPoint(-1, 2), order)
            assert ray_series(S04, BPoint(0, 1), order) == \
                ray_series(S04, BPoint(2, 1), order) == \
                ray_series(S04, BPoint(-2, 1), order)
            assert ray_series(S04, BPoint(1, 1), order) == \
                ray_series(S04, BPoint(-1, 1), order) == \
                ray_series(S04, BPoint(3, 1), order)

    def test_s04_classes_are_cyclic_permutations(self):
        perm = {"R10": "R01", "R01": "R11", "R11": "R10"}
        for order in (4, 6):
            a = ray_series(S04, BPoint(1, 0), order)
            b = ray_series(S04, BPoint(0, 1), order)
            c = ray_series(S04, BPoint(1, 1), order)
            assert [x.permute_vars(perm) for x in a.coeffs] == list(b.coeffs)
            assert [x.permute_vars(perm) for x in b.coeffs] == list(c.coeffs)

    def test_s11_independent_of_direction(self):
        for d in (BPoint(1, 0), BPoint(0, 1), BPoint(-1, 1), BPoint(2, 1),
                  BPoint(-3, 2)):
            assert ray_series(S11, d, 5) == ray_series(S11, BPoint(1, 0), 5)

    def test_positivity_to_order_12(self):
        for d in (BPoint(1, 0), BPoint(0, 1), BPoint(1, 1)):
            s = ray_series(S04, d, 12)
            assert all(c.is_nonnegative() for c in s.coeffs)
        s = ray_series(S11, BPoint(1, 0), 12)
        assert all(c.is_nonnegative() for c in s.coeffs)

    def test_specializes_to_s11(self):
        for d in (BPoint(1, 0), BPoint(0, 1), BPoint(1, 1)):
            got = [s04_to_s11(c) for c in ray_series(S04, d, 8).coeffs]
            assert got == list(ray_series(S11, d, 8).coeffs)

    def test_displayed_x4_typo_is_corrected(self):
        # the closed form's x^4 coefficient carries R01^2 + R11^2 (the
        # product of the eight weight monomials), not (R01 R11)^2
        c4 = ray_series(S04, BPoint(1, 0), 4)[4]
        expected = (Y * CoeffPoly.const("S04", ALaurent({4: 1, -4: 1}))
                    + R01 * R01 + R11 * R11)
        assert c4 == expected
        g4 = ray_series(S11, BPoint(1, 0), 4)[4]
        assert g4 == Z * CoeffPoly.const("S11", ALaurent({2: 1, -2: 1}))

    def test_rejects_bad_directions(self):
        with pytest.raises(ValueError):
            ray_series(S04, BPoint(2, 2), 3)
        with pytest.raises(ValueError):
            ray_series(S04, BPoint(0, 0), 3)


class TestRelevantRays:
    def test_zero_budget(self):
        assert relevant_rays(S04, BPoint(1, 0), BPoint(0, 1), BPoint(1, 1)) == ()
        assert relevant_rays(S04, BPoint(1, 0), BPoint(1, 0), BPoint(2, 0)) == ()

    def test_budget_two_against_brute_force(self):
        got = set(relevant_rays(S04, BPoint(1, 0), BPoint(0, 1), BPoint(0, 0)))
        from math import gcd
        brute = set()
        for n in range(0, 5):
            for m in range(-5, 6):
                p = BPoint(m, n)
                if (p.is_canonical() and (m, n) != (0, 0)
                        and gcd(m, n) == 1 and f_norm(p) <= 2):
                    brute.add(p)
        assert got == brute
        assert got == {BPoint(1, 0), BPoint(0, 1), BPoint(-1, 1),
                       BPoint(1, 1), BPoint(-1, 2), BPoint(-2, 1)}

    def test_counts_grow_properly(self):
        sizes = [len(rays_up_to(b)) for b in range(0, 8)]
        assert sizes[0] == 0
        assert all(a < b for a, b in zip(sizes[1:], sizes[2:]))


class TestBasepoints:
    def test_avoids_all_forbidden_lines(self):
        for budget in (2, 4, 6):
            rays = rays_up_to(budget)
            for p in (BPoint(1, 1), BPoint(1, 0), BPoint(0, 0), BPoint(-2, 1)):
                for side in ("left", "right"):
                    Q = choose_basepoint(p, rays, side)
                    for d in sector_directions(rays):
                        assert det2(Q, d) != 0

    def test_sides_differ(self):
        rays = rays_up_to(3)
        ql = choose_basepoint(BPoint(1, 1), rays, "left")
        qr = choose_basepoint(BPoint(1, 1), rays, "right")
        assert det2((1, 1), ql) > 0 > det2((1, 1), qr)

    def test_target_lift(self):
        rays = rays_up_to(3)
        for p in (BPoint(1, 1), BPoint(2, 1), BPoint(1, 0)):
            for side in ("left", "right"):
                Q = choose_basepoint(p, rays, side)
                assert target_lift(p, Q, rays) == (p.m, p.n)
        assert target_lift(BPoint(0, 0), (7, 3), rays) == (0, 0)

    def test_deterministic(self):
        rays = rays_up_to(4)
        assert choose_basepoint(BPoint(1, 2), rays, "left") == \
            choose_basepoint(BPoint(1, 2), rays, "left")

    def test_distinct_mixes_share_sector(self):
        rays = rays_up_to(4)
        q1 = choose_basepoint(BPoint(1, 1), rays, "left")
        q2 = choose_basepoint(BPoint(1, 1), rays, "left", mix=40009)
        assert q1 != q2
        for d in sector_directions(rays):
            s1, s2 = det2(d, q1), det2(d, q2)
            assert (s1 > 0) == (s2 > 0)
