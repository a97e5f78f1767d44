"""Laurent-polynomial ring, q-binomials and Chebyshev polynomials."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinscatter.alaurent import (ALaurent, a_int, a_power, bar_involution,
                                   chebyshev, qbinom)


def laurents(max_terms=4, max_exp=6, max_coeff=9):
    return st.dictionaries(
        st.integers(-max_exp, max_exp),
        st.integers(-max_coeff, max_coeff),
        max_size=max_terms,
    ).map(ALaurent)


# ----------------------------------------------------------------------
# exact division oracle, used to freeze the qbinom(4,2) expected value
# ----------------------------------------------------------------------

def laurent_divide_exact(num: ALaurent, den: ALaurent) -> ALaurent:
    """num / den when the division is exact; raises otherwise."""
    if den.is_zero():
        raise ZeroDivisionError
    quotient = {}
    rem = dict(num.terms)
    den_items = den.sorted_items()
    lead_exp, lead_coeff = den_items[-1]
    while rem:
        top = max(rem)
        q_exp = top - lead_exp
        q_coeff, r = divmod(rem[top], lead_coeff)
        if r:
            raise ValueError("division not exact")
        quotient[q_exp] = q_coeff
        for e, c in den_items:
            e2 = e + q_exp
            acc = rem.get(e2, 0) - c * q_coeff
            if acc:
                rem[e2] = acc
            else:
                rem.pop(e2, None)
    return ALaurent(quotient)


def a_factorial(n: int) -> ALaurent:
    out = ALaurent.from_int(1)
    for j in range(1, n + 1):
        out = out * a_int(j)
    return out


class TestRingAxioms:
    @given(laurents(), laurents(), laurents())
    def test_add_associative_commutative(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a

    @given(laurents(), laurents())
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @settings(max_examples=60)
    @given(laurents(3, 4, 5), laurents(3, 4, 5), laurents(3, 4, 5))
    def test_mul_associative_distributive(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(laurents())
    def test_identities(self, a):
        assert a * ALaurent.from_int(1) == a
        assert a + ALaurent() == a
        assert a - a == ALaurent()

    @given(laurents())
    def test_no_zero_coefficients_stored(self, a):
        assert all(c != 0 for c in a.terms.values())

    @given(laurents(), laurents())
    def test_bar_is_ring_hom(self, a, b):
        assert (a * b).bar() == a.bar() * b.bar()
        assert (a + b).bar() == a.bar() + b.bar()
        assert a.bar().bar() == a


class TestBarInvolution:
    def test_examples(self):
        assert bar_involution(ALaurent({2: 1, 0: 3})) == ALaurent({-2: 1, 0: 3})
        assert bar_involution(ALaurent.from_int(1)) == ALaurent.from_int(1)
        assert bar_involution(qbinom(3, 1)) == qbinom(3, 1)


class TestQBinom:
    def test_trivial_cases(self):
        assert qbinom(0, 0) == ALaurent.from_int(1)
        assert qbinom(2, 1) == ALaurent({2: 1, -2: 1})

    def test_4_choose_2_against_division_oracle(self):
        # expand [4]!/([2]![2]!) by exact big-integer Laurent division
        expected = laurent_divide_exact(
            a_factorial(4), a_factorial(2) * a_factorial(2))
        assert qbinom(4, 2) == expected
        # frozen value from the oracle: A^-8 + A^-4 + 2 + A^4 + A^8
        assert qbinom(4, 2) == ALaurent({-8: 1, -4: 1, 0: 2, 4: 1, 8: 1})

    @pytest.mark.parametrize("n", range(0, 9))
    def test_division_oracle_agrees_everywhere(self, n):
        for k in range(n + 1):
            expected = laurent_divide_exact(
                a_factorial(n), a_factorial(k) * a_factorial(n - k))
            assert qbinom(n, k) == expected

    def test_symmetry_and_bar_invariance(self):
        for n in range(9):
            for k in range(n + 1):
                b = qbinom(n, k)
                assert b == qbinom(n, n - k)
                assert b == b.bar()
                assert b.is_nonnegative()

    def test_q_pascal_recurrence(self):
        for n in range(1, 9):
            for k in range(1, n):
                assert qbinom(n, k) == (a_power(2 * k) * qbinom(n - 1, k)
                                        + a_power(-2 * (n - k)) * qbinom(n - 1, k - 1))

    def test_classical_limit(self):
        from math import comb
        for n in range(9):
            for k in range(n + 1):
                assert qbinom(n, k).at_A_one() == comb(n, k)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            qbinom(2, 3)
        with pytest.raises(ValueError):
            qbinom(-1, 0)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)]


class TestChebyshev:
    def test_examples(self):
        assert chebyshev(0) == [1]
        assert chebyshev(1) == [0, 1]
        assert chebyshev(2) == [-2, 0, 1]
        assert chebyshev(5) == [0, 5, 0, -5, 0, 1]

    def test_recursion(self):
        # T_{n+1} = x T_n - T_{n-1} holds from n = 2 on; T_2 = x^2 - 2 is
        # part of the definition (the naive n = 1 step would give x^2 - 1)
        for n in range(2, 10):
            lhs = chebyshev(n + 1)
            rhs = poly_add(poly_mul([0, 1], chebyshev(n)),
                           [-c for c in chebyshev(n - 1)])
            assert lhs == rhs

    def test_lambda_substitution(self):
        # x = u + u^{-1} gives u^n + u^{-n}
        for n in range(1, 9):
            val = ALaurent()
            x = ALaurent({1: 1, -1: 1})
            for i, c in enumerate(chebyshev(n)):
                if c:
                    val = val + ALaurent.from_int(c) * x ** i
            assert val == ALaurent({n: 1, -n: 1})

    def test_product_to_sum(self):
        # T_m T_n = T_{m+n} + T_{|m-n|} for m != n; the m = n case picks
        # up the trace normalization of the empty bracelet: T_m^2 = T_{2m} + 2
        for m in range(1, 9):
            for n in range(1, 9):
                lhs = poly_mul(chebyshev(m), chebyshev(n))
                if m == n:
                    rhs = poly_add(chebyshev(2 * m), [2])
                else:
                    rhs = poly_add(chebyshev(m + n), chebyshev(abs(m - n)))
                assert poly_add(lhs, [-c for c in rhs]) == [0] * len(lhs)
