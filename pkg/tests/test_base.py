"""Geometry of B: canonical forms, the norm F, PSL_2(Z), crossings."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skeinscatter.base import (BPoint, OriginCrossing, S_MAT, T_MAT,
                               canonicalize, crossings_on_segment, det2,
                               f_norm, f_norm_oracle, mat_mul,
                               pairing_exponent, psl2_apply)

vectors = st.tuples(st.integers(-30, 30), st.integers(-30, 30))


class TestCanonicalize:
    def test_examples(self):
        assert canonicalize((-2, 0)) == (2, 0)
        assert canonicalize((1, -1)) == (-1, 1)
        assert canonicalize((0, 0)) == (0, 0)

    @given(vectors)
    def test_negate_invariance(self, v):
        assert canonicalize(v) == canonicalize((-v[0], -v[1]))
        assert canonicalize(v).is_canonical()


class TestFNorm:
    def test_examples(self):
        assert f_norm((1, 0)) == 1
        assert f_norm((0, 1)) == 1
        assert f_norm((-1, 1)) == 1
        assert f_norm((2, 3)) == 5
        assert f_norm((-2, 1)) == 2

    @given(vectors)
    def test_hexagonal_norm_oracle(self, v):
        assert f_norm(v) == f_norm_oracle(v)

    @given(vectors)
    def test_norm_laws(self, v):
        assert f_norm(v) == f_norm((-v[0], -v[1]))
        assert f_norm(v) >= 1 or v == (0, 0)

    @given(vectors, vectors)
    def test_subadditive(self, u, v):
        assert f_norm((u[0] + v[0], u[1] + v[1])) <= f_norm(u) + f_norm(v)

    def test_boundary_continuity(self):
        # chart values agree on the rays rho_2, rho_3 and across the cut
        for k in range(1, 13):
            assert f_norm((0, k)) == k          # rho_2 from either side
            assert f_norm((-k, k)) == k         # rho_3 from either side
            assert f_norm((k, 0)) == f_norm((-k, 0)) == k

    def test_proper(self):
        # finitely many canonical points with F <= C, counted exactly:
        # 1 + sum_{k<=C} 3k (three boundary rays and three cone interiors)
        for C in range(0, 13):
            pts = [BPoint(m, n) for n in range(0, C + 1)
                   for m in range(-C, C + 1)
                   if BPoint(m, n).is_canonical() and f_norm((m, n)) <= C]
            assert len(pts) == 1 + 3 * C * (C + 1) // 2


class TestPSL2:
    def test_examples(self):
        assert psl2_apply(T_MAT, BPoint(0, 1)) == (1, 1)
        assert psl2_apply(S_MAT, BPoint(1, 0)) == (0, 1)
        ident = ((1, 0), (0, 1))
        for p in [BPoint(2, 3), BPoint(0, 0), BPoint(5, 0)]:
            assert psl2_apply(ident, p) == p

    @given(vectors.filter(lambda v: v != (0, 0)))
    def test_group_action(self, v):
        p = canonicalize(v)
        st_mat = mat_mul(S_MAT, T_MAT)
        assert psl2_apply(st_mat, p) == psl2_apply(S_MAT, psl2_apply(T_MAT, p))

    def test_minus_id_acts_trivially(self):
        minus_id = ((-1, 0), (0, -1))
        for p in [BPoint(2, 3), BPoint(1, 0), BPoint(-1, 2)]:
            assert psl2_apply(minus_id, p) == p

    def test_rejects_non_unimodular(self):
        with pytest.raises(ValueError):
            psl2_apply(((2, 0), (0, 1)), BPoint(1, 0))


class TestPairing:
    def test_examples(self):
        assert pairing_exponent((1, 0), (0, 1), 2) == 2
        assert pairing_exponent((1, 0), (0, 1), 1) == 1
        assert pairing_exponent((2, 3), (2, 3), 2) == 0

    @given(vectors, vectors, st.sampled_from([1, 2]))
    def test_antisymmetry(self, u, v, mu2):
        assert pairing_exponent(u, v, mu2) == -pairing_exponent(v, u, mu2)


class TestCrossings:
    def test_line_y_equals_x(self):
        cr = crossings_on_segment((3, 1), (-1, 0), [BPoint(1, 1)])
        assert len(cr) == 1
        c = cr[0]
        assert c.ray == (1, 1)
        assert c.lift == (1, 1)
        assert c.point == (Fraction(1), Fraction(1))
        assert c.parameter == 2

    def test_positive_x_axis(self):
        cr = crossings_on_segment((1, 2), (0, -1), [BPoint(1, 0)])
        assert len(cr) == 1
        assert cr[0].lift == (1, 0)
        assert cr[0].point == (Fraction(1), Fraction(0))
        assert cr[0].parameter == 2

    def test_origin_crossing_is_an_error(self):
        with pytest.raises(OriginCrossing):
            crossings_on_segment((1, 1), (-1, -1), [BPoint(1, 0)])

    def test_crossings_satisfy_line_equations_exactly(self):
        lines = [BPoint(1, 0), BPoint(1, 1), BPoint(1, 2), BPoint(-2, 1)]
        cr = crossings_on_segment((7, 3), (-3, -1), lines)
        assert len(cr) >= 2
        for c in cr:
            assert det2(c.point, c.lift) == 0
            assert c.lift[0] * c.point[0] + c.lift[1] * c.point[1] > 0
        params = [c.parameter for c in cr]
        assert params == sorted(params)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            crossings_on_segment((0, 0), (1, 0), [])
        with pytest.raises(ValueError):
            crossings_on_segment((1, 1), (0, 0), [])
        with pytest.raises(ValueError):
            crossings_on_segment((1, 1), (1, 0), [BPoint(2, 2)])  # not primitive
