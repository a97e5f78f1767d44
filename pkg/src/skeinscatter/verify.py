"""Verification suites: every paper-level identity as an executable check.

Each suite returns a Report; a FAIL report always carries at least one
witness with both computed values, so a defect (for instance an
injected wall corruption) is attributable from the report alone.
Suites are embarrassingly parallel over their input lists; set
SKEIN_SCATTER_THREADS to cap the worker count (results are merged in
input order, so output is identical for any thread count).
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .alaurent import ALaurent, a_power
from .base import (BPoint, S_MAT, T_MAT, canonicalize, det2, f_norm, mat_apply,
                   mat_det, psl2_apply)
from .broken import (AlgebraElement, points_up_to, product_theta,
                     structure_constant)
from .coeffpoly import CoeffPoly, s04_to_s11
from .diagrams import DiagramConfig, S04, S11, relevant_rays, choose_basepoint, ray_series
from .algebra import (element_product, element_to_monomials, expand_monomial,
                      presentation_algebra)
from .weights import (degree8_product, degree8_rhs, embed_s04, quartic_factor,
                      nu_classes, WeightLaurent)


@dataclass
class Report:
    """Outcome of one verification suite."""

    name: str
    parameters: dict
    status: str = "PASS"
    witnesses: list = field(default_factory=list)

    def fail(self, witness: dict):
        self.status = "FAIL"
        if len(self.witnesses) < 16:
            self.witnesses.append(witness)

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        return {"name": self.name, "params": self.parameters,
                "status": self.status, "witnesses": self.witnesses}


def _thread_count() -> int:
    raw = os.environ.get("SKEIN_SCATTER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_all(fn, inputs):
    """Map fn over inputs, optionally threaded, preserving input order."""
    n = _thread_count()
    inputs = list(inputs)
    if n <= 1 or len(inputs) <= 1:
        return [fn(x) for x in inputs]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, inputs))


# ---------------------------------------------------------------------------
# presentation relations
# ---------------------------------------------------------------------------

def _theta(cfg, p):
    return AlgebraElement.theta(cfg.ring, p)


def _aconst(cfg, terms):
    return CoeffPoly.const(cfg.ring, ALaurent(terms))


def presentation_sides(cfg: DiagramConfig):
    """Left and right sides of the four presentation relations, computed
    with broken-line products.  h = A^2 for s04, A for s11."""
    he = 2 if cfg.surface == "s04" else 1
    ring = cfg.ring
    if cfg.surface == "s04":
        R = {1: CoeffPoly.var(ring, "R10"), 2: CoeffPoly.var(ring, "R01"),
             3: CoeffPoly.var(ring, "R11")}
        y0 = CoeffPoly.var(ring, "y")
    else:
        R = {j: CoeffPoly.zero(ring) for j in (1, 2, 3)}
        y0 = CoeffPoly.var(ring, "z")
    V = {1: BPoint(1, 0), 2: BPoint(0, 1), 3: BPoint(-1, 1)}
    th = {j: _theta(cfg, V[j]) for j in (1, 2, 3)}
    pt = lambda cfgp: product_theta(cfg, *cfgp)
    sides = []
    for j in (1, 2, 3):
        k, l = j % 3 + 1, (j + 1) % 3 + 1
        lhs = (pt((V[j], V[k])).scale(_aconst(cfg, {-he: 1}))
               - pt((V[k], V[j])).scale(_aconst(cfg, {he: 1})))
        rhs = (_theta(cfg, V[l]).scale(_aconst(cfg, {-2 * he: 1, 2 * he: -1}))
               - AlgebraElement.unit(ring).scale(
                   (_aconst(cfg, {he: 1, -he: -1})) * R[l]))
        sides.append((f"commutator-{j}{k}", lhs, rhs))
    triple = element_product(cfg, pt((V[1], V[2])), _theta(cfg, V[3]))
    lhs = triple.scale(_aconst(cfg, {-he: 1}))
    rhs = (pt((V[1], V[1])).scale(_aconst(cfg, {-2 * he: 1}))
           + pt((V[2], V[2])).scale(_aconst(cfg, {2 * he: 1}))
           + pt((V[3], V[3])).scale(_aconst(cfg, {-2 * he: 1}))
           + th[1].scale(_aconst(cfg, {-he: 1}) * R[1])
           + th[2].scale(_aconst(cfg, {he: 1}) * R[2])
           + th[3].scale(_aconst(cfg, {-he: 1}) * R[3])
           + AlgebraElement.unit(ring).scale(
               y0 - _aconst(cfg, {2 * he: 2, -2 * he: 2})))
    sides.append(("cubic", lhs, rhs))
    return sides


def verify_presentation_relations(cfg: DiagramConfig) -> Report:
    """All four presentation relations, evaluated with broken lines."""
    rep = Report("presentation", {"surface": cfg.surface,
                                  "corruption": cfg.corruption})
    for name, lhs, rhs in presentation_sides(cfg):
        if lhs != rhs:
            rep.fail({"relation": name, "lhs": repr(lhs), "rhs": repr(rhs)})
    return rep


# ---------------------------------------------------------------------------
# consistency: endpoint independence
# ---------------------------------------------------------------------------

def verify_consistency(cfg: DiagramConfig, max_f: int) -> Report:
    """Structure constants agree across >= 3 admissible endpoints:
    both sides of the target ray, plus a distinct basepoint (different
    component for p = 0, different point of the left component
    otherwise), for every (p1, p2, p) with F(p1)+F(p2) <= max_f."""
    rep = Report("consistency", {"surface": cfg.surface, "max_f": max_f,
                                 "corruption": cfg.corruption})
    pairs = [(p1, p2)
             for p1 in points_up_to(max_f - 1) if p1 != (0, 0)
             for p2 in points_up_to(max_f - f_norm(p1)) if p2 != (0, 0)]

    def check(pair):
        p1, p2 = pair
        bad = []
        for p in points_up_to(f_norm(p1) + f_norm(p2)):
            lines = relevant_rays(cfg, p1, p2, p)
            qs = [choose_basepoint(p, lines, "left"),
                  choose_basepoint(p, lines, "right")]
            if p == (0, 0):
                qs.append(choose_basepoint(p, lines, "left",
                                           default_dir=BPoint(0, 1)))
                qs.append(choose_basepoint(p, lines, "right",
                                           default_dir=BPoint(-1, 1)))
            else:
                qs.append(choose_basepoint(p, lines, "left", mix=40009))
            vals = [structure_constant(cfg, p1, p2, p, Q=q) for q in qs]
            if any(v != vals[0] for v in vals[1:]):
                bad.append((p, qs, vals))
        return bad

    for pair, bad in zip(pairs, _run_all(check, pairs)):
        for p, qs, vals in bad:
            rep.fail({"p1": list(pair[0]), "p2": list(pair[1]),
                      "target": list(p),
                      "basepoints": [list(q) for q in qs],
                      "values": [repr(v) for v in vals]})
    return rep


# ---------------------------------------------------------------------------
# associativity / positivity
# ---------------------------------------------------------------------------

def verify_associativity(cfg: DiagramConfig, max_f: int, samples=None) -> Report:
    """(theta_p1 theta_p2) theta_p3 == theta_p1 (theta_p2 theta_p3)."""
    rep = Report("associativity", {"surface": cfg.surface, "max_f": max_f,
                                   "corruption": cfg.corruption})
    pts = [p for p in points_up_to(max_f)]
    triples = list(itertools.product(pts, repeat=3))
    if samples is not None:
        stride = max(1, len(triples) // samples)
        triples = triples[::stride]

    def check(tri):
        p1, p2, p3 = tri
        lhs = element_product(cfg, product_theta(cfg, p1, p2), _theta(cfg, p3))
        rhs = element_product(cfg, _theta(cfg, p1), product_theta(cfg, p2, p3))
        return None if lhs == rhs else (tri, lhs, rhs)

    for res in _run_all(check, triples):
        if res is not None:
            tri, lhs, rhs = res
            rep.fail({"triple": [list(p) for p in tri],
                      "lhs": repr(lhs), "rhs": repr(rhs)})
    return rep


def verify_positivity(cfg: DiagramConfig, max_f: int) -> Report:
    """Every structure constant with F(p1)+F(p2) <= max_f lies in
    Z_{>=0}[A^{+-1}] (times monomials in the coefficient variables)."""
    rep = Report("positivity", {"surface": cfg.surface, "max_f": max_f,
                                "corruption": cfg.corruption})
    pairs = [(p1, p2)
             for p1 in points_up_to(max_f - 1) if p1 != (0, 0)
             for p2 in points_up_to(max_f - f_norm(p1)) if p2 != (0, 0)]

    def check(pair):
        p1, p2 = pair
        bad = []
        for p, c in product_theta(cfg, p1, p2).terms.items():
            if not c.is_nonnegative():
                bad.append((p, c))
        return bad

    for (pair, bad) in zip(pairs, _run_all(check, pairs)):
        for p, c in bad:
            rep.fail({"p1": list(pair[0]), "p2": list(pair[1]),
                      "target": list(p), "value": repr(c)})
    return rep


# ---------------------------------------------------------------------------
# symmetries and limits
# ---------------------------------------------------------------------------

def sigma_for_matrix(M) -> dict:
    """Variable permutation of {R10, R01, R11} induced by M via its
    action on direction classes mod 2."""
    names = {(1, 0): "R10", (0, 1): "R01", (1, 1): "R11"}
    perm = {}
    for cls, name in names.items():
        img = mat_apply(M, cls)
        perm[name] = names[(img[0] % 2, img[1] % 2)]
    return perm


def verify_psl2_equivariance(M, p1, p2) -> Report:
    """product(M p1, M p2) equals product(p1, p2) transported by M."""
    if mat_det(M) != 1:
        raise ValueError("matrix must have determinant +1")
    p1, p2 = BPoint(*p1), BPoint(*p2)
    rep = Report("psl2", {"matrix": [list(r) for r in M],
                          "p1": list(p1), "p2": list(p2)})
    perm = sigma_for_matrix(M)
    cfg = S04
    src = product_theta(cfg, p1, p2)
    expect = {}
    for p, c in src.terms.items():
        expect[psl2_apply(M, p)] = c.permute_vars(perm)
    got = product_theta(cfg, psl2_apply(M, p1), psl2_apply(M, p2)).terms
    if got != expect:
        rep.fail({"got": repr(sorted((tuple(k), repr(v)) for k, v in got.items())),
                  "expected": repr(sorted((tuple(k), repr(v)) for k, v in expect.items()))})
    return rep


def verify_psl2_suite(pairs=None) -> Report:
    """Equivariance under the generators S and T on sample pairs."""
    if pairs is None:
        pts = [p for p in points_up_to(3) if p != (0, 0)]
        pairs = [(p1, p2) for p1 in pts for p2 in pts
                 if f_norm(p1) + f_norm(p2) <= 4][:24]
    rep = Report("psl2", {"pairs": len(pairs) * 2})
    for M in (S_MAT, T_MAT):
        for p1, p2 in pairs:
            sub = verify_psl2_equivariance(M, p1, p2)
            if not sub.passed:
                rep.fail({"matrix": [list(r) for r in M],
                          "p1": list(p1), "p2": list(p2),
                          "detail": sub.witnesses})
    return rep


def torus_limit_expected(p1: BPoint, p2: BPoint) -> dict:
    """Product-to-sum prediction at z = 0, with theta_0 counted twice
    when p1 = p2 (the empty class carries the trace normalization 2)."""
    d = det2(p1, p2)
    out = {}
    for key, ph in ((canonicalize((p1.m + p2.m, p1.n + p2.n)), d),
                    (canonicalize((p1.m - p2.m, p1.n - p2.n)), -d)):
        c = CoeffPoly.const("S11", a_power(ph))
        out[key] = out.get(key, CoeffPoly.zero("S11")) + c
    return {k: v for k, v in out.items() if not v.is_zero()}


def verify_torus_limit(max_f: int, cfg: DiagramConfig = S11) -> Report:
    """S11 products at z = 0 reproduce the product-to-sum formula."""
    rep = Report("torus-limit", {"max_f": max_f, "corruption": cfg.corruption})
    pts = [p for p in points_up_to(max_f) if p != (0, 0)]

    def z0(c):
        return CoeffPoly("S11", {e: v for e, v in c.terms.items() if e == (0,)})

    def check(pair):
        p1, p2 = pair
        e = product_theta(cfg, p1, p2)
        got = {p: z0(c) for p, c in e.terms.items() if not z0(c).is_zero()}
        expect = torus_limit_expected(p1, p2)
        return None if got == expect else (pair, got, expect)

    for res in _run_all(check, itertools.product(pts, repeat=2)):
        if res is not None:
            (p1, p2), got, expect = res
            rep.fail({"p1": list(p1), "p2": list(p2),
                      "got": repr(sorted((tuple(k), repr(v)) for k, v in got.items())),
                      "expected": repr(sorted((tuple(k), repr(v)) for k, v in expect.items()))})
    return rep


def verify_specialization(p1, p2) -> Report:
    """Termwise A^4 -> A^2, R -> 0, y -> z maps the S04 product to S11."""
    p1, p2 = BPoint(*p1), BPoint(*p2)
    rep = Report("specialization", {"p1": list(p1), "p2": list(p2)})
    e04 = product_theta(S04, p1, p2)
    e11 = product_theta(S11, p1, p2)
    spec = {p: s04_to_s11(c) for p, c in e04.terms.items()}
    spec = {p: c for p, c in spec.items() if not c.is_zero()}
    if spec != e11.terms:
        rep.fail({"specialized": repr(sorted((tuple(k), repr(v)) for k, v in spec.items())),
                  "s11": repr(sorted((tuple(k), repr(v)) for k, v in e11.terms.items()))})
    return rep


def verify_specialization_suite(max_f: int = 4) -> Report:
    pts = [p for p in points_up_to(max_f) if p != (0, 0)]
    pairs = [(p1, p2) for p1 in pts for p2 in pts
             if f_norm(p1) + f_norm(p2) <= max_f]
    rep = Report("specialization", {"pairs": len(pairs)})
    for p1, p2 in pairs:
        sub = verify_specialization(p1, p2)
        if not sub.passed:
            rep.fail(sub.witnesses[0] | {"p1": list(p1), "p2": list(p2)})
    return rep


# ---------------------------------------------------------------------------
# weight-lattice identities
# ---------------------------------------------------------------------------

def _alaurent_list_inverse(poly: list, order: int) -> list:
    """Inverse series of an ALaurent-coefficient polynomial, constant 1."""
    inv = [ALaurent.from_int(0)] * (order + 1)
    inv[0] = ALaurent.from_int(1)
    for m in range(1, order + 1):
        acc = ALaurent.from_int(0)
        for i in range(1, min(m, len(poly) - 1) + 1):
            acc = acc + poly[i] * inv[m - i]
        inv[m] = -acc
    return inv


def verify_weight_identity(order: int = 10) -> Report:
    """The degree-8 product identity, its two coefficient corollaries,
    and the wall-function series identity to the given order."""
    rep = Report("weight-identity", {"order": order})
    # (i) full degree-8 identity, all three direction classes
    for j in (1, 2, 3):
        lhs = degree8_product(j)
        rhs = [embed_s04(c) for c in degree8_rhs(j)]
        for k, (l, r) in enumerate(zip(lhs, rhs)):
            if l != r:
                rep.fail({"check": f"degree8-v{j}", "coefficient": k,
                          "lhs": repr(l), "rhs": repr(r)})
    # factorization into palindromic quartics
    q12, q34 = quartic_factor(1, 2), quartic_factor(3, 4)
    prod = [WeightLaurent() for _ in range(9)]
    for i, a in enumerate(q12):
        for k, b in enumerate(q34):
            prod[i + k] = prod[i + k] + a * b
    if prod != degree8_product(1):
        rep.fail({"check": "quartic-factorization"})
    # (ii) x and x^2 coefficient corollaries
    for j, name in ((1, "R10"), (2, "R01"), (3, "R11")):
        total = WeightLaurent()
        for e in nu_classes(j):
            total = total + WeightLaurent.monomial(e)
        if total != embed_s04(CoeffPoly.var("S04", name)):
            rep.fail({"check": f"linear-coefficient-{name}"})
        pairsum = WeightLaurent()
        cls = nu_classes(j)
        for i1 in range(8):
            for i2 in range(i1 + 1, 8):
                pairsum = pairsum + (WeightLaurent.monomial(cls[i1])
                                     * WeightLaurent.monomial(cls[i2]))
        target = embed_s04(CoeffPoly.var("S04", "y")
                           - CoeffPoly.const("S04", ALaurent({4: 1, 0: 2, -4: 1})))
        if pairsum != target:
            rep.fail({"check": f"pair-coefficient-v{j}"})
    # (iii) wall-function series identity to the given order
    denom = [ALaurent.from_int(1), ALaurent.from_int(0),
             ALaurent({0: -2, 4: -1, -4: -1}), ALaurent.from_int(0),
             ALaurent({0: 2, 4: 2, -4: 2}), ALaurent.from_int(0),
             ALaurent({0: -2, 4: -1, -4: -1}), ALaurent.from_int(0),
             ALaurent.from_int(1)]
    invd = _alaurent_list_inverse(denom, order)
    num = degree8_product(1)
    series = ray_series(S04, BPoint(1, 0), order)
    for k in range(order + 1):
        lhs = WeightLaurent()
        for i in range(0, min(k, 8) + 1):
            lhs = lhs + num[i].scale(invd[k - i])
        rhs = embed_s04(series[k])
        if lhs != rhs:
            rep.fail({"check": "wall-series", "coefficient": k,
                      "lhs": repr(lhs), "rhs": repr(rhs)})
    return rep


# ---------------------------------------------------------------------------
# oracle equivalence
# ---------------------------------------------------------------------------

def verify_oracle_equivalence(cfg: DiagramConfig, max_f: int) -> Report:
    """Broken-line multiplication table equals the rewriting-engine table
    on all monomial pairs n[p], n[p'] with F <= max_f."""
    rep = Report("oracle", {"surface": cfg.surface, "max_f": max_f,
                            "corruption": cfg.corruption})
    alg = presentation_algebra(cfg.surface)
    pts = list(points_up_to(max_f))

    def check(pair):
        p, q = pair
        lhs = alg.mul(alg.monomial(p), alg.monomial(q))
        e = element_product(cfg, expand_monomial(cfg, p), expand_monomial(cfg, q))
        rhs = element_to_monomials(cfg, e)
        return None if lhs == rhs else (pair, lhs, rhs)

    for res in _run_all(check, itertools.product(pts, repeat=2)):
        if res is not None:
            (p, q), lhs, rhs = res
            rep.fail({"p": list(p), "q": list(q),
                      "rewriting": repr(lhs), "broken-lines": repr(rhs)})
    return rep


SUITES = {
    "presentation": lambda cfg, max_f: verify_presentation_relations(cfg),
    "consistency": lambda cfg, max_f: verify_consistency(cfg, max_f if max_f else 6),
    "associativity": lambda cfg, max_f: verify_associativity(cfg, max_f if max_f else 3),
    "positivity": lambda cfg, max_f: verify_positivity(cfg, max_f if max_f else 6),
    "torus-limit": lambda cfg, max_f: verify_torus_limit(max_f if max_f else 5),
    "specialization": lambda cfg, max_f: verify_specialization_suite(max_f if max_f else 4),
    "psl2": lambda cfg, max_f: verify_psl2_suite(),
    "weight-identity": lambda cfg, max_f: verify_weight_identity(max_f if max_f else 10),
    "oracle": lambda cfg, max_f: verify_oracle_equivalence(cfg, max_f if max_f else 4),
}
