"""The two concrete quantum scattering diagrams on B.

Every primitive direction of B carries one quantum ray.  For the
4-punctured sphere the wall function depends on the direction only
through its class mod 2, via the assignment of the three coefficient
variables R10, R01, R11; for the 1-punctured torus every wall carries
the same function of the single variable z.

Wall function for the 4-punctured sphere, direction class (m,n) mod 2
with distinguished variable r and companion pair (s1, s2):

                 r x (1 + x^2)              y x^2
    W = 1 + ------------------------ + ------------------------
            (1-A^{-4}x^2)(1-A^4x^2)    (1-A^{-4}x^2)(1-A^4x^2)

                 x^3 (s1 + s2 x)(s2 + s1 x)
          + --------------------------------------- .
            (1-A^{-4}x^2)(1-x^2)^2(1-A^4x^2)

Equivalently W has the product form

    N(x) / ((1-A^{-4}x^2)(1-x^2)^2(1-A^4x^2)),

where N(x) is the palindromic degree-8 polynomial

    1 + r x + (y-A^4-2-A^{-4}) x^2 + (s1 s2 - r) x^3
      + (s1^2 + s2^2 - 2y + 2A^4 + 2 + 2A^{-4}) x^4 + ... (palindrome),

which is exactly the 8-fold product of the half-weight monomials of the
line classes (the weight-lattice module verifies this coefficient by
coefficient).  All series coefficients lie in Z_{>=0}[A^{+-1}][R.., y].

NB the x^4 coefficient carries s1^2 + s2^2, not (s1 s2)^2: the two
companion variables enter separately.  A variant with the merged s = s1*s2
(closed form "s x^3 (1 + s x + x^2)") is kept available for the
consistency experiments; it fails endpoint independence at bend budget 4.

For the 1-punctured torus:

    G = 1 + z x^2 / ((1-A^{-2}x^2)(1-A^2x^2)).
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import NamedTuple

from .alaurent import a_power
from .base import BPoint, det2, f_norm
from .coeffpoly import CoeffPoly, RaySeries, expand_rational_series

# scale factor used to push basepoints strictly inside an open sector,
# far from every direction a candidate exponent could take
_SECTOR_MIX = 99991


class DiagramConfig(NamedTuple):
    """Which scattering diagram to run, plus verification knobs.

    surface: "s04" or "s11".  mu2 is twice the half-integer mu of the
    skew form <.,.> = mu det(.,.), so the phase A^{2 mu det} = A^{mu2 det}
    has an integer exponent.  corruption injects a deliberate defect into
    one wall function; it exists so the verification suites can
    demonstrate that they actually detect failures.
    """

    surface: str = "s04"
    corruption: str | None = None
    wall_form: str = "product"   # "product" (default) or "merged-s" variant

    @property
    def ring(self) -> str:
        return "S04" if self.surface == "s04" else "S11"

    @property
    def mu2(self) -> int:
        return 2 if self.surface == "s04" else 1


S04 = DiagramConfig("s04")
S11 = DiagramConfig("s11")


def config(surface: str, corruption=None, wall_form="product") -> DiagramConfig:
    if surface not in ("s04", "s11"):
        raise ValueError(f"unknown surface {surface!r}; expected s04 or s11")
    return DiagramConfig(surface, corruption, wall_form)


# variable assignment per direction class mod 2: (r, s1, s2)
_S04_CLASS_VARS = {
    (1, 0): ("R10", "R01", "R11"),
    (0, 1): ("R01", "R10", "R11"),
    (1, 1): ("R11", "R10", "R01"),
}


def _list_mul(a: list, b: list) -> list:
    ring = a[0].ring
    out = [CoeffPoly.zero(ring)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def _list_add(a: list, b: list) -> list:
    ring = a[0].ring
    n = max(len(a), len(b))
    zero = CoeffPoly.zero(ring)
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero)
            for i in range(n)]


def _s04_wall_series(cls: tuple, order: int, wall_form: str) -> RaySeries:
    ring = "S04"
    one = CoeffPoly.one(ring)
    zero = CoeffPoly.zero(ring)
    rname, s1name, s2name = _S04_CLASS_VARS[cls]
    r = CoeffPoly.var(ring, rname)
    s1 = CoeffPoly.var(ring, s1name)
    s2 = CoeffPoly.var(ring, s2name)
    y = CoeffPoly.var(ring, "y")

    d_am = [one, zero, CoeffPoly.const(ring, -a_power(-4))]   # 1 - A^{-4} x^2
    d_ap = [one, zero, CoeffPoly.const(ring, -a_power(4))]    # 1 - A^{4} x^2
    d_1 = [one, zero, -one]                                    # 1 - x^2
    d1sq = _list_mul(d_1, d_1)

    # single-fraction numerator over (1-A^{-4}x^2)(1-x^2)^2(1-A^4x^2):
    # the denominator itself, plus the three positive pieces scaled by
    # whatever denominator factors they lack
    num = _list_mul(_list_mul(d_am, d1sq), d_ap)
    num = _list_add(num, _list_mul([zero, r, zero, r], d1sq))   # r x (1+x^2)
    num = _list_add(num, _list_mul([zero, zero, y], d1sq))      # y x^2
    if wall_form == "product":
        num = _list_add(num, [zero, zero, zero,
                              s1 * s2, s1 * s1 + s2 * s2, s1 * s2])
    elif wall_form == "merged-s":
        s = s1 * s2
        num = _list_add(num, [zero, zero, zero, s, s * s, s])
    else:
        raise ValueError(f"unknown wall_form {wall_form!r}")
    return expand_rational_series(num, [(d_am, 1), (d_1, 2), (d_ap, 1)], order)


def _s11_wall_series(order: int) -> RaySeries:
    ring = "S11"
    one = CoeffPoly.one(ring)
    zero = CoeffPoly.zero(ring)
    z = CoeffPoly.var(ring, "z")
    d_am = [one, zero, CoeffPoly.const(ring, -a_power(-2))]
    d_ap = [one, zero, CoeffPoly.const(ring, -a_power(2))]
    num = _list_add(_list_mul(d_am, d_ap), [zero, zero, z])
    return expand_rational_series(num, [(d_am, 1), (d_ap, 1)], order)


@lru_cache(maxsize=None)
def _cached_series(surface: str, cls: tuple, order: int, corruption, wall_form) -> RaySeries:
    if surface == "s04":
        series = _s04_wall_series(cls, order, wall_form)
    else:
        series = _s11_wall_series(order)
    if corruption is None:
        return series
    return _apply_corruption(series, cls, corruption)


def _apply_corruption(series: RaySeries, cls: tuple, corruption: str) -> RaySeries:
    ring = series.ring
    coeffs = list(series.coeffs)
    if corruption == "bump-one-wall":
        # R11 -> R11 + 1 in the linear coefficient of the (1,1)-class walls
        if ring == "S04" and cls == (1, 1):
            coeffs[1] = coeffs[1] + CoeffPoly.one(ring)
    elif corruption == "flip-sign":
        if len(coeffs) > 2:
            coeffs[2] = -coeffs[2]
    else:
        raise ValueError(f"unknown corruption {corruption!r}")
    return RaySeries(series.order, coeffs)


def ray_series(cfg: DiagramConfig, direction: BPoint, order: int) -> RaySeries:
    """Wall function of the quantum ray in the given primitive direction.

    The truncation order must cover every bend the caller can afford: a
    bend of amount k consumes at least k of the available budget, so
    order = total budget is always enough.
    """
    direction = BPoint(*direction)
    if not direction.is_canonical() or direction == (0, 0):
        raise ValueError(f"direction {direction} must be canonical and nonzero")
    if gcd(direction.m, direction.n) != 1:
        raise ValueError(f"direction {direction} is not primitive")
    if cfg.surface == "s04":
        cls = (direction.m % 2, direction.n % 2)
    else:
        cls = (0, 0)
    return _cached_series(cfg.surface, cls, order, cfg.corruption, cfg.wall_form)


def relevant_rays(cfg: DiagramConfig, p1: BPoint, p2: BPoint, p: BPoint) -> list:
    """Primitive directions whose walls can matter for C^p_{p1,p2}.

    A contributing bend at a wall of direction d with amount k costs
    F(d) * k out of the budget F(p1) + F(p2) - F(p), so only walls with
    F(d) <= budget are relevant.  Empty when the budget is negative.
    """
    budget = f_norm(p1) + f_norm(p2) - f_norm(p)
    return rays_up_to(budget)


@lru_cache(maxsize=None)
def rays_up_to(bound: int) -> tuple:
    """All canonical primitive directions d with F(d) <= bound."""
    if bound < 1:
        return ()
    out = []
    for n in range(0, bound + 1):
        for m in range(-bound, bound + 1):
            if (m, n) == (0, 0):
                continue
            d = BPoint(m, n)
            if not d.is_canonical() or gcd(m, n) != 1:
                continue
            if f_norm(d) <= bound:
                out.append(d)
    out.sort()
    return tuple(out)


class _SlopeCmp:
    """Exact counterclockwise comparator for directions in one half-plane."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = x
        self.y = y

    def __lt__(self, other):
        # u precedes v counterclockwise iff det(u, v) > 0
        return self.x * other.y - self.y * other.x > 0

    def __eq__(self, other):
        return self.x * other.y - self.y * other.x == 0


def _angle_key(v):
    """Sort key for nonzero integer vectors by angle from the +x axis."""
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return (half, _SlopeCmp(x, y))


def sector_directions(rays) -> list:
    """Both lifts of the listed rays plus the three distinguished rays,
    sorted counterclockwise starting just above the positive x-axis."""
    dirs = set()
    for p in rays:
        dirs.add((p.m, p.n))
        dirs.add((-p.m, -p.n))
    for v in ((1, 0), (0, 1), (-1, 1)):
        dirs.add(v)
        dirs.add((-v[0], -v[1]))
    return sorted(dirs, key=_angle_key)


def choose_basepoint(p: BPoint, rays, which_side: str = "left",
                     default_dir: BPoint = BPoint(1, 0), mix: int = _SECTOR_MIX):
    """An exact integer basepoint in an open sector adjacent to R_{>=0} p.

    The forbidden set is the finite union of the listed wall lines and
    the three distinguished rays; the complement components are open
    sectors, so a valid point always exists and its radius is irrelevant.
    `which_side` picks the sector counterclockwise ("left") or clockwise
    ("right") of the ray through p.  For p = 0 the sector adjacent to
    `default_dir` is used.

    The returned point is u * mix + v where u is the lift of p and v the
    neighbouring forbidden direction: strictly inside the sector, and
    far from every small-norm integer direction, so no candidate
    broken-line segment through it can hit the origin.  Varying `mix`
    yields distinct basepoints inside the same component.
    """
    p = BPoint(*p)
    dirs = sector_directions(rays)
    if p == (0, 0):
        u = (default_dir[0], default_dir[1])
    else:
        u = (p.m, p.n)
    ug = primitive_tuple(u)
    if ug in dirs:
        i = dirs.index(ug)
    else:
        # p is not itself a wall: insert it virtually to find neighbours
        dirs2 = sorted(set(dirs) | {ug}, key=_angle_key)
        i = dirs2.index(ug)
        dirs = dirs2
    if which_side == "left":
        v = dirs[(i + 1) % len(dirs)]
    elif which_side == "right":
        v = dirs[(i - 1) % len(dirs)]
    else:
        raise ValueError("which_side must be 'left' or 'right'")
    if mix < 2:
        raise ValueError("mix must be at least 2")
    Q = (ug[0] * mix + v[0], ug[1] * mix + v[1])
    for d in dirs:
        if det2(Q, d) == 0:
            raise AssertionError(f"basepoint {Q} landed on forbidden line {d}")
    return Q


def primitive_tuple(v):
    x, y = v
    g = gcd(x, y)
    return (x // g, y // g)


def target_lift(p: BPoint, Q, lines) -> tuple:
    """The lift of p whose ray lies in the closure of Q's sector.

    Q must avoid all listed lines and the distinguished rays; exactly one
    of {p, -p} then borders Q's sector (p itself for basepoints built by
    choose_basepoint, but this check is independent of that convention).
    """
    p = BPoint(*p)
    if p == (0, 0):
        return (0, 0)
    candidates = []
    for w in ((p.m, p.n), (-p.m, -p.n)):
        ok = True
        for d in sector_directions(lines):
            dw = det2(d, w)
            dq = det2(d, Q)
            if dw == 0:
                continue
            if (dw > 0) != (dq > 0):
                ok = False
                break
        if ok:
            candidates.append(w)
    if len(candidates) != 1:
        raise ValueError(f"no unique lift of {p} adjacent to basepoint {Q}")
    return candidates[0]
