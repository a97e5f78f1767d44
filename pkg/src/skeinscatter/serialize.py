"""Canonical JSON encoding of all artifact values.

A polynomial is a list of term objects {"A": e, "m": {var: exp}, "c": n}
sorted by (variable exponent vector, A exponent); everything else nests
these.  Encoding then decoding is the identity, and two encodings of
equal values are byte-identical, which the golden CLI tests rely on.
"""

from __future__ import annotations

import json

from .alaurent import ALaurent
from .base import BPoint
from .broken import AlgebraElement, BrokenLineTrace
from .coeffpoly import CoeffPoly, RaySeries, RING_VARS


class SchemaError(ValueError):
    """Malformed serialized value."""


def poly_to_terms(c: CoeffPoly) -> list:
    names = RING_VARS[c.ring]
    out = []
    for exps, al in sorted(c.terms.items()):
        mono = {v: e for v, e in zip(names, exps) if e}
        for aexp, coeff in al.sorted_items():
            out.append({"A": aexp, "m": mono, "c": coeff})
    return out


def poly_from_terms(ring: str, terms) -> CoeffPoly:
    if ring not in RING_VARS:
        raise SchemaError(f"unknown ring {ring!r}")
    names = RING_VARS[ring]
    acc: dict = {}
    if not isinstance(terms, list):
        raise SchemaError("polynomial must be a list of terms")
    for t in terms:
        if not isinstance(t, dict) or not {"A", "m", "c"} <= set(t):
            raise SchemaError(f"malformed term {t!r}")
        mono = t["m"]
        if not isinstance(mono, dict):
            raise SchemaError(f"malformed monomial {mono!r}")
        exps = []
        for v in names:
            e = mono.get(v, 0)
            if not isinstance(e, int) or e < 0:
                raise SchemaError(f"bad exponent for {v}: {e!r}")
            exps.append(e)
        extra = set(mono) - set(names)
        if extra:
            raise SchemaError(f"unknown variables {sorted(extra)} for ring {ring}")
        if not isinstance(t["A"], int) or not isinstance(t["c"], int):
            raise SchemaError("A exponent and coefficient must be integers")
        key = tuple(exps)
        cur = acc.get(key, ALaurent())
        acc[key] = cur + ALaurent({t["A"]: t["c"]})
    return CoeffPoly(ring, acc)


def bpoint_to_json(p: BPoint) -> list:
    return [p.m, p.n]


def bpoint_from_json(v) -> BPoint:
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(x, int) for x in v)):
        raise SchemaError(f"malformed point {v!r}")
    p = BPoint(*v)
    if not p.is_canonical():
        raise SchemaError(f"point {v} is not canonical")
    return p


def element_to_json(e: AlgebraElement) -> dict:
    return {
        "ring": e.ring,
        "terms": [{"p": bpoint_to_json(p), "coeff": poly_to_terms(c)}
                  for p, c in e.sorted_items()],
    }


def element_from_json(d) -> AlgebraElement:
    if not isinstance(d, dict) or "ring" not in d or "terms" not in d:
        raise SchemaError("element must have 'ring' and 'terms'")
    terms = {}
    for t in d["terms"]:
        if not isinstance(t, dict) or "p" not in t or "coeff" not in t:
            raise SchemaError(f"malformed element term {t!r}")
        p = bpoint_from_json(t["p"])
        if p in terms:
            raise SchemaError(f"duplicate key {t['p']}")
        terms[p] = poly_from_terms(d["ring"], t["coeff"])
    return AlgebraElement(d["ring"], terms)


def series_to_json(s: RaySeries) -> dict:
    return {"ring": s.ring, "order": s.order,
            "coeffs": [poly_to_terms(c) for c in s.coeffs]}


def series_from_json(d) -> RaySeries:
    if not isinstance(d, dict) or not {"ring", "order", "coeffs"} <= set(d):
        raise SchemaError("series must have 'ring', 'order', 'coeffs'")
    order = d["order"]
    if not isinstance(order, int) or order < 0:
        raise SchemaError(f"bad order {order!r}")
    coeffs = [poly_from_terms(d["ring"], t) for t in d["coeffs"]]
    if len(coeffs) != order + 1:
        raise SchemaError("coefficient count does not match order")
    return RaySeries(order, coeffs)


def normal_to_json(nf) -> dict:
    from .algebra import monomial_for_point
    return {
        "ring": nf.ring,
        "terms": [{"p": bpoint_to_json(p),
                   "monomial": list(monomial_for_point(p)),
                   "coeff": poly_to_terms(c)}
                  for p, c in nf.sorted_items()],
    }


def _frac_to_json(x) -> list:
    from fractions import Fraction
    f = Fraction(x)
    return [f.numerator, f.denominator]


def trace_to_json(tr: BrokenLineTrace) -> dict:
    return {
        "charge": bpoint_to_json(tr.charge),
        "endpoint": [_frac_to_json(tr.endpoint[0]), _frac_to_json(tr.endpoint[1])],
        "events": [{"point": [_frac_to_json(pt[0]), _frac_to_json(pt[1])],
                    "lift": [w[0], w[1]], "amount": ell,
                    "factor": poly_to_terms(f)}
                   for pt, w, ell, f in tr.events],
        "final_exponent": [tr.final_exponent[0], tr.final_exponent[1]],
        "coefficient": poly_to_terms(tr.coefficient),
        "cost": tr.cost,
    }


def dumps(obj) -> str:
    """Deterministic JSON text (sorted object keys, no whitespace drift)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
