"""Exact Laurent polynomials in the quantum variable A.

Everything downstream (wall functions, bending coefficients, structure
constants) is computed over Z[A^{+-1}].  We use q = A^4 throughout, so q
never appears as a separate symbol: a power of q is just an even power
of A (or any power at the torus specialization, where A^4 is replaced
by A^2).

Values are immutable after construction and hashable, so they can be
shared freely between threads and used as cache keys.
"""

from __future__ import annotations


class ALaurent:
    """A Laurent polynomial sum_e c_e A^e with integer coefficients.

    Stored sparsely as a map from exponent to nonzero coefficient.  The
    canonical serialization orders exponents increasingly, which makes
    equality, hashing and printed output deterministic.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        clean = {int(e): int(c) for e, c in terms.items() if c != 0}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ALaurent is immutable")

    @classmethod
    def _raw(cls, terms: dict) -> "ALaurent":
        """Internal constructor for dicts already in canonical form."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "ALaurent":
        return ALaurent({0: n})

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "ALaurent":
        return ALaurent({exp: coeff})

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ALaurent):
            other = _coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            c2 = terms.get(e, 0) + c
            if c2:
                terms[e] = c2
            else:
                del terms[e]
        return ALaurent._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return ALaurent._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, ALaurent):
            other = _coerce(other)
        terms: dict = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                c = get(e, 0) + c1 * c2
                if c:
                    terms[e] = c
                else:
                    del terms[e]
        return ALaurent._raw(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = A_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure -----------------------------------------------------

    def bar(self) -> "ALaurent":
        """The bar involution A -> A^{-1} (negate every exponent)."""
        return ALaurent._raw({-e: c for e, c in self.terms.items()})

    def halve_exponents(self) -> "ALaurent":
        """Replace A^4 by A^2, i.e. halve every exponent.

        Raises ValueError on an odd exponent: such input lies outside
        the image of the 4-punctured-sphere calculus.
        """
        out = {}
        for e, c in self.terms.items():
            if e % 2:
                raise ValueError(f"odd A-exponent {e} cannot be halved")
            out[e // 2] = c
        return ALaurent(out)

    def at_A_one(self) -> int:
        """Evaluate at A = 1 (the classical limit)."""
        return sum(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def sorted_items(self):
        return tuple(sorted(self.terms.items()))

    # -- comparisons / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = ALaurent.from_int(other)
        if not isinstance(other, ALaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.sorted_items())
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_items():
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*A" if c != 1 else "A")
            else:
                parts.append(f"{c}*A^{e}" if c != 1 else f"A^{e}")
        return " + ".join(parts)


def _coerce(x) -> ALaurent:
    if isinstance(x, ALaurent):
        return x
    if isinstance(x, int):
        return ALaurent.from_int(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to ALaurent")


A_ZERO = ALaurent()
A_ONE = ALaurent.from_int(1)
A = ALaurent.monomial(1)       # the quantum variable itself
A_INV = ALaurent.monomial(-1)


def a_power(e: int) -> ALaurent:
    """A^e as a Laurent polynomial."""
    return ALaurent.monomial(e)


def bar_involution(p: ALaurent) -> ALaurent:
    """A -> A^{-1}: a ring involution negating every exponent."""
    return p.bar()


def a_int(n: int) -> ALaurent:
    """The symmetrized quantum integer [n]_A = (A^{2n}-A^{-2n})/(A^2-A^{-2}).

    Equals A^{-2(n-1)} + A^{-2(n-3)} + ... + A^{2(n-1)}, which has all
    coefficients nonnegative.
    """
    if n < 0:
        raise ValueError("quantum integer of a negative argument")
    return ALaurent({-2 * (n - 1) + 4 * j: 1 for j in range(n)})


def qbinom(n: int, k: int) -> ALaurent:
    """Symmetrized A-binomial coefficient [n choose k]_A.

    Computed via the symmetrized q-Pascal recurrence
        [n,k] = A^{2k} [n-1,k] + A^{-2(n-k)} [n-1,k-1],
    which stays in Z_{>=0}[A^{+-1}] at every step (no division).  The
    result is invariant under A -> A^{-1}.
    """
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"qbinom({n},{k}) requires 0 <= k <= n")
    # row-by-row Pascal fill
    row = [A_ONE]
    for m in range(1, n + 1):
        new = [A_ONE]
        for j in range(1, m):
            new.append(a_power(2 * j) * row[j] + a_power(-2 * (m - j)) * row[j - 1])
        new.append(A_ONE)
        row = new
    return row[k]


def chebyshev(n: int) -> list:
    """Coefficient list (degree-indexed) of the Chebyshev-like polynomial T_n.

    T_0 = 1, T_1 = x, T_2 = x^2 - 2, and T_{n+1} = x T_n - T_{n-1}.
    Substituting x = u + u^{-1} gives u^n + u^{-n} for n >= 1.
    """
    if n < 0:
        raise ValueError("chebyshev index must be nonnegative")
    if n == 0:
        return [1]
    prev, cur = [2], [0, 1]  # T_0 in the recursion seed is 2 so that T_2 = x^2 - 2
    # NB: returned T_0 is 1 (the empty bracelet), but the recursion runs on
    # the trace normalization where the n = 0 term is 2.
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return [int(c) for c in cur]


def chebyshev_eval(n: int, value, one, mul, add, sub):
    """Evaluate T_n at `value` in an arbitrary commutative ring.

    The caller supplies the ring operations; this keeps the Chebyshev
    recursion usable for ALaurent, CoeffPoly and plain integers alike.
    """
    if n == 0:
        return one
    prev = add(one, one)
    cur = value
    for _ in range(n - 1):
        prev, cur = cur, sub(mul(value, cur), prev)
    return cur
