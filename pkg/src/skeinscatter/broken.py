"""Enumeration of quantum broken lines and assembly of structure constants.

A broken line with charge p and endpoint Q is discovered backwards: walk
from Q in the direction of a candidate final exponent s; every transversal
crossing with a wall line is an opportunity to un-bend, replacing the
current exponent d by d + k*w (w the primitive lift positively spanning
the crossing point, k the amount of bending); the walk is accepted when
the exponent class reaches the charge and the remaining backward ray
escapes to infinity without passing through the singular point.

The search runs in the double cover with exact integer arithmetic: a
segment basepoint is stored as an integer point (a positive rational
multiple of the true point, which is legitimate because every wall is a
line through the origin, so the crossing pattern is scale-invariant).
True rational bend points are recorded alongside for trace dumps.

Budget accounting: a bend of amount k at a wall in direction w costs
F(w)*k.  For a pair of broken lines contributing to C^p_{p1,p2} the
total cost never exceeds F(p1)+F(p2)-F(p), which both bounds the search
and proves its termination.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple

from .alaurent import a_power
from .base import BPoint, canonicalize, det2, f_norm
from .coeffpoly import CoeffPoly, RaySeries
from .diagrams import (DiagramConfig, choose_basepoint, ray_series,
                       rays_up_to, relevant_rays, target_lift)


class BrokenLineTrace(NamedTuple):
    """One accepted broken line, events in forward time (infinity -> Q)."""

    charge: BPoint
    endpoint: tuple             # exact rational endpoint Q
    events: tuple               # (point, lift w, amount, factor) per bend
    final_exponent: tuple       # integer lift s(gamma) at Q
    coefficient: CoeffPoly      # product of the bend factors
    cost: int                   # sum of F(w) * amount over the bends


class AlgebraElement:
    """Finite R-linear combination of quantum theta functions.

    terms maps canonical BPoints to nonzero CoeffPoly coefficients.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: str, terms=None):
        clean = {}
        for p, c in (terms or {}).items():
            p = BPoint(*p)
            if not p.is_canonical():
                raise ValueError(f"non-canonical key {p}")
            if not isinstance(c, CoeffPoly):
                c = CoeffPoly.const(ring, c)
            if c.ring != ring:
                raise ValueError("coefficient ring mismatch")
            if not c.is_zero():
                clean[p] = c
        self.ring = ring
        self.terms = clean

    @staticmethod
    def theta(ring: str, p) -> "AlgebraElement":
        return AlgebraElement(ring, {BPoint(*p): CoeffPoly.one(ring)})

    @staticmethod
    def unit(ring: str) -> "AlgebraElement":
        return AlgebraElement.theta(ring, (0, 0))

    def __add__(self, other):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        terms = dict(self.terms)
        for p, c in other.terms.items():
            acc = terms.get(p)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                terms.pop(p, None)
            else:
                terms[p] = acc
        return AlgebraElement(self.ring, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        if not isinstance(c, CoeffPoly):
            c = CoeffPoly.const(self.ring, c)
        return AlgebraElement(self.ring, {p: v * c for p, v in self.terms.items()})

    def coeff(self, p) -> CoeffPoly:
        return self.terms.get(BPoint(*p), CoeffPoly.zero(self.ring))

    def map_coeffs(self, f) -> "AlgebraElement":
        return AlgebraElement(self.ring, {p: f(c) for p, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def sorted_items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})*theta[{p.m},{p.n}]" for p, c in self.sorted_items())


# ---------------------------------------------------------------------------
# bending coefficients
# ---------------------------------------------------------------------------

def bend_factor(series: RaySeries, N: int, ell: int, mu2: int) -> CoeffPoly:
    """Aggregated amount-ell bending coefficient for an N-fold crossing.

    The coefficient of x^ell in
        prod_{j=0}^{N-1} sum_k c_k A^{2 mu2 k (j - (N-1)/2)} x^k,
    where c_k are the wall-series coefficients and mu2 = 2 mu.  This sums
    over every bending profile of total amount ell at once; positivity of
    the series carries over to the aggregate.  ell must stay within the
    truncation order of the series.
    """
    if N < 0 or ell < 0:
        raise ValueError("N and ell must be nonnegative")
    if ell > series.order:
        raise IndexError(f"amount {ell} exceeds series truncation {series.order}")
    ring = series.ring
    out = [CoeffPoly.one(ring)] + [CoeffPoly.zero(ring)] * ell
    for j in range(N):
        phase = mu2 * (2 * j - N + 1)
        factor = [series[k].map_coeffs(lambda c, e=phase * k: c * a_power(e))
                  for k in range(ell + 1)]
        new = [CoeffPoly.zero(ring)] * (ell + 1)
        for i in range(ell + 1):
            if out[i].is_zero():
                continue
            for k in range(0, ell + 1 - i):
                if factor[k].is_zero():
                    continue
                new[i + k] = new[i + k] + out[i] * factor[k]
        out = new
    return out[ell]


@lru_cache(maxsize=None)
def _bend_table(cfg: DiagramConfig, cls: tuple, N: int, upto: int) -> tuple:
    """Cached bending coefficients (amounts 0..upto) per direction class."""
    direction = {(1, 0): BPoint(1, 0), (0, 1): BPoint(0, 1), (1, 1): BPoint(1, 1),
                 (0, 0): BPoint(0, 1)}[cls]
    series = ray_series(cfg, direction, upto)
    ring = cfg.ring
    out = [CoeffPoly.one(ring)] + [CoeffPoly.zero(ring)] * upto
    for j in range(N):
        phase = cfg.mu2 * (2 * j - N + 1)
        factor = [series[k].map_coeffs(lambda c, e=phase * k: c * a_power(e))
                  for k in range(upto + 1)]
        new = [CoeffPoly.zero(ring)] * (upto + 1)
        for i in range(upto + 1):
            if out[i].is_zero():
                continue
            for k in range(0, upto + 1 - i):
                if factor[k].is_zero():
                    continue
                new[i + k] = new[i + k] + out[i] * factor[k]
        out = new
    return tuple(out)


# ---------------------------------------------------------------------------
# backward search
# ---------------------------------------------------------------------------
#
# Two implementations walk backwards from the endpoint: a fast suffix
# walk used for structure constants, and an event-recording one behind
# enumerate_broken_lines.  The fast walk is memoized on its entire
# argument list; the suffix sums it returns do not depend on how the
# walk arrived, which shares work across candidate final exponents,
# across the two charges of a product, and across products.


@lru_cache(maxsize=None)
def _line_data(line_bound: int) -> tuple:
    return tuple((p.m, p.n, f_norm(p)) for p in rays_up_to(line_bound))


# the three distinguished lines, as (pm, pn): crossing any of them
# consumes one unit of budget even without bending (the piecewise-linear
# derivative of F jumps by at least 1 at every cone boundary, and by
# strictly more than F(w)*amount when a bend happens on one of them)
_DISTINGUISHED = ((1, 0), (0, 1), (-1, 1))


def _rho_crossings(Xx, Xy, dx, dy, t0n, t0d):
    """Crossing parameters (tn, dn) of the ray with the three
    distinguished lines, before an origin passage."""
    out = []
    for pm, pn in _DISTINGUISHED:
        dn = dx * pn - dy * pm
        if dn == 0:
            continue
        tn = Xy * pm - Xx * pn
        if dn < 0:
            tn, dn = -tn, -dn
        if tn <= 0:
            continue
        if t0n is not None and tn * t0d >= t0n * dn:
            continue
        out.append((tn, dn))
    return out


@lru_cache(maxsize=None)
def _walk(cfg: DiagramConfig, line_bound: int, X: tuple, d: tuple,
          budget: int, fc: int) -> tuple:
    """Suffix sums of the backward walk from scaled integer point X.

    Returns ((final class, coefficient), ...) aggregating every way of
    completing a backward walk whose current exponent is d and whose
    remaining budget is `budget`, keeping only completions ending at a
    class of F-norm fc.  A bend of amount k at a wall w consumes
    F(w)*k (+1 when w is distinguished); crossing a distinguished line
    without bending consumes 1.  X may be any positive rational multiple
    of the true point: walls are lines through the origin, so the
    crossing pattern is scale-invariant.
    """
    dx, dy = d
    fd = max(abs(dx), abs(dy), abs(dx + dy))
    if fd - fc > budget or fc - fd > budget:
        return ()
    Xx, Xy = X

    t0n = t0d = None
    if Xx * dy == Xy * dx and (Xx * dx + Xy * dy) < 0:
        t0n, t0d = (-Xx, dx) if dx else (-Xy, dy)
        if t0d < 0:
            t0n, t0d = -t0n, -t0d

    rho = _rho_crossings(Xx, Xy, dx, dy, t0n, t0d)

    out: dict = {}
    if t0n is None and fd == fc and len(rho) <= budget:
        out[canonicalize(d)] = CoeffPoly.one(cfg.ring)

    if budget >= 1:
        s04 = cfg.surface == "s04"
        for pm, pn, fw in _line_data(line_bound):
            dn = dx * pn - dy * pm
            if dn == 0:
                continue
            tn = Xy * pm - Xx * pn
            if dn < 0:
                tn, dn = -tn, -dn
            if tn <= 0:
                continue
            if t0n is not None and tn * t0d >= t0n * dn:
                continue
            # budget consumed before bending here: distinguished lines
            # crossed strictly earlier, plus 1 if this wall itself is one
            pre = sum(1 for rn, rd in rho if rn * dn < tn * rd)
            distinguished = (pn == 0 or pm == 0 or pm + pn == 0)
            avail = budget - pre - (1 if distinguished else 0)
            max_ell = avail // fw
            if max_ell < 1:
                continue
            px_s = Xx * dn + dx * tn
            py_s = Xy * dn + dy * tn
            if pm * px_s + pn * py_s >= 0:
                wx, wy = pm, pn
            else:
                wx, wy = -pm, -pn
            N = wx * dy - wy * dx
            if N < 0:
                N = -N
            table = _bend_table(cfg, (wx & 1, wy & 1) if s04 else (0, 0), N, max_ell)
            g = gcd(px_s, py_s)
            Xnew = (px_s // g, py_s // g)
            for ell in range(1, max_ell + 1):
                factor = table[ell]
                if factor.is_zero():
                    continue
                sub = _walk(cfg, line_bound, Xnew,
                            (dx + ell * wx, dy + ell * wy),
                            avail - fw * ell, fc)
                for cls, c in sub:
                    acc = out.get(cls)
                    fc_term = factor * c
                    out[cls] = fc_term if acc is None else acc + fc_term
    return tuple(sorted((k, v) for k, v in out.items() if not v.is_zero()))


def _search(cfg, charge, fc, lines, X, X_true, d, budget, events, out):
    """Extend the backward walk from integer point X with exponent d.

    fc is f_norm(charge).  events accumulate in backward order (nearest
    to Q first); accepted completions are appended to out.  Crossings
    need not be visited in parameter order: each one is an independent
    "first bend happens here" branch (all earlier crossings pass with
    amount 0 and factor 1), so the t-ordering is irrelevant for the sum.
    """
    dx, dy = d
    fd = max(abs(dx), abs(dy), abs(dx + dy))
    if fd - fc > budget or fc - fd > budget:
        return
    Xx, Xy = X

    # parameter of an origin passage along {X + t d : t > 0}, as a
    # positive fraction t0n/t0d; crossings at or beyond it are unusable
    t0n = t0d = None
    if Xx * dy == Xy * dx and (Xx * dx + Xy * dy) < 0:
        t0n, t0d = (-Xx, dx) if dx else (-Xy, dy)
        if t0d < 0:
            t0n, t0d = -t0n, -t0d

    if t0n is None and canonicalize(d) == charge:
        out.append(tuple(events))
    if budget < 1:
        return

    for pm, pn, fw in lines:
        max_ell = budget // fw
        if max_ell < 1:
            continue
        dn = dx * pn - dy * pm
        if dn == 0:
            continue
        tn = Xy * pm - Xx * pn
        if dn < 0:
            tn, dn = -tn, -dn
        if tn <= 0:
            continue
        if t0n is not None and tn * t0d >= t0n * dn:
            continue
        px_s = Xx * dn + dx * tn
        py_s = Xy * dn + dy * tn
        if pm * px_s + pn * py_s >= 0:
            wx, wy = pm, pn
        else:
            wx, wy = -pm, -pn
        N = wx * dy - wy * dx
        if N < 0:
            N = -N
        table = _bend_table(cfg, (wx & 1, wy & 1) if cfg.surface == "s04" else (0, 0),
                            N, max_ell)
        pt_true = None
        for ell in range(1, max_ell + 1):
            factor = table[ell]
            if factor.is_zero():
                continue
            nx, ny = dx + ell * wx, dy + ell * wy
            rem = budget - fw * ell
            fnew = max(abs(nx), abs(ny), abs(nx + ny))
            if fnew - fc > rem or fc - fnew > rem:
                continue
            if pt_true is None:
                t = Fraction(X_true[1] * pm - X_true[0] * pn, dx * pn - dy * pm)
                pt_true = (X_true[0] + t * dx, X_true[1] + t * dy)
            g = gcd(px_s, py_s)
            _search(cfg, charge, fc, lines, (px_s // g, py_s // g), pt_true,
                    (nx, ny), rem, events + [(pt_true, (wx, wy), ell, factor)], out)


@lru_cache(maxsize=None)
def _enumerate_cached(cfg: DiagramConfig, charge: BPoint, Q: tuple,
                      budget: int, line_bound: int) -> tuple:
    lines = tuple((p.m, p.n, f_norm(p)) for p in rays_up_to(line_bound))
    fc = f_norm(charge)
    bound = fc + budget
    parity = (charge.m % 2, charge.n % 2) if cfg.surface == "s11" else None
    traces = []
    for sy in range(-bound, bound + 1):
        for sx in range(-bound, bound + 1):
            if (sx, sy) == (0, 0):
                continue
            if max(abs(sx), abs(sy), abs(sx + sy)) > bound:
                continue
            if parity is not None and (sx % 2, sy % 2) != parity:
                continue
            s = (sx, sy)
            found = []
            _search(cfg, charge, fc, lines, Q, Q, s, budget, [], found)
            for events in found:
                coeff = CoeffPoly.one(cfg.ring)
                cost = 0
                for _, w, ell, factor in events:
                    coeff = coeff * factor
                    cost += f_norm(w) * ell
                traces.append(BrokenLineTrace(
                    charge=charge, endpoint=Q,
                    events=tuple(reversed(events)),
                    final_exponent=s, coefficient=coeff, cost=cost))
    traces.sort(key=lambda t: (t.final_exponent, t.cost, len(t.events)))
    return tuple(traces)


def enumerate_broken_lines(cfg: DiagramConfig, charge: BPoint, Q, budget: int,
                           line_bound: int | None = None) -> tuple:
    """All broken lines of the given charge ending at Q with bend cost <= budget.

    Q must be an exact integer point avoiding every wall line with
    F <= line_bound (default: budget) as well as the three distinguished
    rays.  Walls outside that bound cannot carry an affordable bend.
    """
    charge = BPoint(*charge)
    if not charge.is_canonical() or charge == (0, 0):
        raise ValueError("charge must be a nonzero canonical point")
    if line_bound is None:
        line_bound = budget
    Q = (int(Q[0]), int(Q[1]))
    for p in rays_up_to(line_bound):
        if det2(Q, p) == 0:
            raise ValueError(f"basepoint {Q} lies on the wall line {p}")
    for v in ((1, 0), (0, 1), (-1, 1)):
        if det2(Q, v) == 0:
            raise ValueError(f"basepoint {Q} lies on a distinguished ray {v}")
    return _enumerate_cached(cfg, charge, Q, budget, line_bound)


@lru_cache(maxsize=None)
def _final_monomials(cfg, charge, Q, budget, line_bound) -> dict:
    """Coefficient sums of broken lines with the given charge, keyed by
    final exponent lift at Q."""
    fc = f_norm(charge)
    bound = fc + budget
    parity = (charge.m % 2, charge.n % 2) if cfg.surface == "s11" else None
    out = {}
    for sy in range(-bound, bound + 1):
        for sx in range(-bound, bound + 1):
            if (sx, sy) == (0, 0):
                continue
            if max(abs(sx), abs(sy), abs(sx + sy)) > bound:
                continue
            if parity is not None and (sx % 2, sy % 2) != parity:
                continue
            for cls, c in _walk(cfg, line_bound, Q, (sx, sy), budget, fc):
                if cls == charge:
                    out[(sx, sy)] = c
    return out


# ---------------------------------------------------------------------------
# structure constants and theta products
# ---------------------------------------------------------------------------

def structure_constant(cfg: DiagramConfig, p1: BPoint, p2: BPoint, p: BPoint,
                       Q=None, side: str = "left") -> CoeffPoly:
    """The coefficient of theta_p in theta_{p1} theta_{p2}, computed at Q.

    Q defaults to a generic basepoint adjacent to the ray of p on the
    requested side.  Pairs of broken lines with charges p1, p2 and common
    endpoint Q are weighted by A^{2 mu det(s1, s2)} and summed over
    s1 + s2 = (lift of p at Q).
    """
    p1, p2, p = BPoint(*p1), BPoint(*p2), BPoint(*p)
    ring = cfg.ring
    if p1 == (0, 0):
        return CoeffPoly.one(ring) if p2 == p else CoeffPoly.zero(ring)
    if p2 == (0, 0):
        return CoeffPoly.one(ring) if p1 == p else CoeffPoly.zero(ring)
    budget = f_norm(p1) + f_norm(p2) - f_norm(p)
    if budget < 0:
        return CoeffPoly.zero(ring)
    if Q is None:
        Q = choose_basepoint(p, relevant_rays(cfg, p1, p2, p), side)
    return _assemble(cfg, p1, p2, p, Q, budget, budget)


def _assemble(cfg, p1, p2, p, Q, budget, line_bound) -> CoeffPoly:
    ring = cfg.ring
    lift = target_lift(p, Q, rays_up_to(line_bound))
    m1 = _final_monomials(cfg, p1, Q, budget, line_bound)
    m2 = _final_monomials(cfg, p2, Q, budget, line_bound)
    total = CoeffPoly.zero(ring)
    for s1, c1 in m1.items():
        s2 = (lift[0] - s1[0], lift[1] - s1[1])
        c2 = m2.get(s2)
        if c2 is None:
            continue
        phase = a_power(cfg.mu2 * det2(s1, s2))
        total = total + (c1 * c2).map_coeffs(lambda c, ph=phase: c * ph)
    return total


@lru_cache(maxsize=None)
def product_theta(cfg: DiagramConfig, p1: BPoint, p2: BPoint) -> AlgebraElement:
    """The full product theta_{p1} theta_{p2} as an AlgebraElement.

    Support is bounded by F(p) <= F(p1) + F(p2).  All targets sharing a
    ray direction reuse the same basepoint and broken-line enumeration;
    the budget and wall set are fixed at the pair total F(p1)+F(p2),
    which is safe because a pair of lines matching a target p can only
    ever bend within the budget F(p1)+F(p2)-F(p).
    """
    p1, p2 = BPoint(*p1), BPoint(*p2)
    ring = cfg.ring
    if p1 == (0, 0):
        return AlgebraElement.theta(ring, p2)
    if p2 == (0, 0):
        return AlgebraElement.theta(ring, p1)
    total_f = f_norm(p1) + f_norm(p2)
    lines = rays_up_to(total_f)
    terms = {}
    if cfg.surface == "s11":
        parity = ((p1.m + p2.m) % 2, (p1.n + p2.n) % 2)
    else:
        parity = None
    for p in points_up_to(total_f):
        if parity is not None and (p.m % 2, p.n % 2) != parity:
            continue
        Q = choose_basepoint(p, lines, "left")
        c = _assemble(cfg, p1, p2, p, Q, total_f, total_f)
        if not c.is_zero():
            terms[p] = c
    return AlgebraElement(ring, terms)


@lru_cache(maxsize=None)
def points_up_to(bound: int) -> tuple:
    """All canonical points of B(Z) with F <= bound, including the origin."""
    out = []
    for n in range(0, bound + 1):
        for m in range(-bound, bound + 1):
            p = BPoint(m, n)
            if p.is_canonical() and f_norm(p) <= bound:
                out.append(p)
    out.sort()
    return tuple(out)
