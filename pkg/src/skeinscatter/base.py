"""Exact geometry of the integral affine orbifold B = R^2 / (v ~ -v).

B is realized as the closed upper half-plane with (x, 0) ~ (-x, 0); its
integer points B(Z) are pairs (m, n) with n >= 0, and m >= 0 when n = 0.
The origin is the unique singular point, with -id monodromy around it.

All broken-line geometry is computed in the double cover R^2 \\ {0}:
a ray of B is represented by the full line through both of its lifts,
and points/directions are plain integer or rational pairs that are never
reduced modulo -id mid-computation.  Everything is exact; there are no
epsilon comparisons anywhere (a misordered wall crossing would silently
corrupt structure constants).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple


class BPoint(NamedTuple):
    """Canonical integer point of B: n >= 0, and m >= 0 when n = 0."""

    m: int
    n: int

    def is_canonical(self) -> bool:
        return self.n > 0 or (self.n == 0 and self.m >= 0)

    def is_primitive(self) -> bool:
        return gcd(self.m, self.n) == 1


# a lift is an unreduced integer vector of the double cover; a rational
# point is an exact point of R^2 \ {0}; a Matrix2 is a det-+1 integer
# matrix as a pair of rows
LiftVec = tuple
RationalPoint = tuple
Matrix2 = tuple

ORIGIN = BPoint(0, 0)
V1 = BPoint(1, 0)
V2 = BPoint(0, 1)
V3 = BPoint(-1, 1)

# generators of PSL_2(Z) acting on B(Z)
S_MAT = ((0, -1), (1, 1))
T_MAT = ((1, 1), (0, 1))


def canonicalize(v) -> BPoint:
    """Canonical representative of {v, -v} in B(Z)."""
    x, y = v
    if y > 0 or (y == 0 and x >= 0):
        return BPoint(x, y)
    return BPoint(-x, -y)


def f_norm(p) -> int:
    """The proper cone-wise linear function F with F(v_j) = 1.

    Chart formulas: x + y on the cone spanned by (1,0),(0,1);
    y on the cone spanned by (0,1),(-1,1); -x on the cone spanned by
    (-1,1),(-1,0).  Extended to arbitrary lifts by F(v) = F(-v).
    """
    x, y = p
    if y < 0 or (y == 0 and x < 0):
        x, y = -x, -y
    if x >= 0:            # sigma_{1,2}
        return x + y
    if x + y >= 0:        # sigma_{2,3}
        return y
    return -x             # sigma_{3,1}


def f_norm_oracle(v) -> int:
    """Closed form max(|x|, |y|, |x+y|); independent check of f_norm."""
    x, y = v
    return max(abs(x), abs(y), abs(x + y))


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def mat_det(M) -> int:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def mat_mul(M, N):
    return (
        (M[0][0] * N[0][0] + M[0][1] * N[1][0], M[0][0] * N[0][1] + M[0][1] * N[1][1]),
        (M[1][0] * N[0][0] + M[1][1] * N[1][0], M[1][0] * N[0][1] + M[1][1] * N[1][1]),
    )


def mat_apply(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def psl2_apply(M, p) -> BPoint:
    """Apply M in PSL_2(Z) to a point of B(Z) and re-canonicalize."""
    if mat_det(M) != 1:
        raise ValueError("matrix must have determinant +1")
    return canonicalize(mat_apply(M, p))


def primitive(v):
    """The primitive integer vector positively spanning v (v != 0)."""
    x, y = v
    g = gcd(x, y)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (x // g, y // g)


def pairing_exponent(s1, s2, mu2: int) -> int:
    """Exponent of A in the structure-constant phase A^{2 mu det(s1, s2)}.

    mu2 is twice the half-integer mu (2 for the 4-punctured sphere,
    1 for the 1-punctured torus), so the result 2*mu*det = mu2*det is
    always an integer.
    """
    return mu2 * det2(s1, s2)


class OriginCrossing(Exception):
    """A candidate broken-line segment passes through the singular point."""


class Crossing(NamedTuple):
    """One transversal intersection of an open ray with a full wall line."""

    ray: BPoint          # canonical primitive direction of the wall
    lift: tuple          # primitive vector positively spanning the point
    point: tuple         # exact rational crossing point (Fraction pair)
    parameter: Fraction  # t > 0 with point = X + t*d


def _ray_line_crossings(X, d, lines):
    """Shared kernel: crossings of {X + t d : t > 0} with lines R*p.

    X is an exact rational or integer pair, d an integer pair, lines an
    iterable of canonical primitive BPoints.  Returns (crossings sorted
    by t, t0) where t0 is the parameter of an origin passage (None if
    the ray misses the origin).  Crossings beyond the origin are not
    reported: the path cannot continue through the singular point.
    """
    t0 = None
    if det2(X, d) == 0:
        # X and d parallel: the ray hits 0 iff they point oppositely
        if X[0] * d[0] + X[1] * d[1] < 0:
            t0 = -Fraction(X[0], d[0]) if d[0] else -Fraction(X[1], d[1])
    found = []
    for p in lines:
        dn = det2(d, p)
        if dn == 0:
            continue  # parallel to the wall line, no transversal crossing
        t = Fraction(-det2(X, p), dn)
        if t <= 0:
            continue
        if t0 is not None and t >= t0:
            continue
        pt = (X[0] + t * d[0], X[1] + t * d[1])
        lift = (p.m, p.n) if _positively_spans((p.m, p.n), pt) else (-p.m, -p.n)
        found.append(Crossing(p, lift, pt, t))
    found.sort(key=lambda c: c.parameter)
    return found, t0


def _positively_spans(w, pt) -> bool:
    """True if pt lies on R_{>0} w (pt assumed on the line R w)."""
    return (w[0] * pt[0] + w[1] * pt[1]) > 0


def crossings_on_segment(X, d, lines):
    """All intersections of the open ray {X + t d, t > 0} with wall lines.

    Raises OriginCrossing when the ray passes through the origin: such a
    candidate broken line is invalid (broken lines live in B \\ {0}).
    """
    if X == (0, 0) or (X[0] == 0 and X[1] == 0):
        raise ValueError("base point must be nonzero")
    if d[0] == 0 and d[1] == 0:
        raise ValueError("direction must be nonzero")
    for p in lines:
        if not (isinstance(p, BPoint) and p.is_canonical() and p.is_primitive()):
            raise ValueError(f"line {p} must be a canonical primitive BPoint")
    crossings, t0 = _ray_line_crossings(X, d, lines)
    if t0 is not None:
        raise OriginCrossing(f"segment from {X} in direction {d} passes through 0")
    return crossings
