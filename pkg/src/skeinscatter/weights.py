"""Weight-lattice identities and peripheral-variable substitution.

The rank-4 lattice L carries the eight half-weight classes of line
curves per distinguished direction.  Working in the group algebra of
(1/2)L means Laurent monomials in h_j = t^{G_j / 2}; the peripheral
variables embed as a_j = h_j + h_j^{-1}, and

    R10 = a1 a2 + a3 a4,   R01 = a1 a3 + a2 a4,   R11 = a1 a4 + a2 a3,
    y   = a1 a2 a3 a4 + a1^2 + a2^2 + a3^2 + a4^2 + (A^2 - A^{-2})^2.

The eight classes attached to v_1 are (1/2)(+-G1 +-G2) and
(1/2)(+-G3 +-G4); those for v_2 and v_3 pair (1,3)(2,4) and (1,4)(2,3).
The product of (1 + t^class x) over the eight classes is the numerator
of the corresponding wall function - that identity, its two coefficient
corollaries, and the full wall-function series comparison are the
verification targets of this module.
"""

from __future__ import annotations

from itertools import product as iproduct

from .alaurent import ALaurent, A_ONE, A_ZERO, a_power, chebyshev
from .coeffpoly import CoeffPoly

# half-weight classes in h-exponent units: pairs of G-indices per v_j
_PAIRINGS = {1: ((0, 1), (2, 3)), 2: ((0, 2), (1, 3)), 3: ((0, 3), (1, 2))}


class WeightLaurent:
    """Laurent polynomial in h_1..h_4 with ALaurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            if not isinstance(c, ALaurent):
                c = ALaurent.from_int(c)
            if not c.is_zero():
                clean[tuple(int(x) for x in e)] = c
        self.terms = clean

    @staticmethod
    def const(c) -> "WeightLaurent":
        return WeightLaurent({(0, 0, 0, 0): c})

    @staticmethod
    def monomial(e, c=1) -> "WeightLaurent":
        return WeightLaurent({tuple(e): c})

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e, A_ZERO) + c
            if acc.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = acc
        out = WeightLaurent()
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + other.scale(ALaurent.from_int(-1))

    def scale(self, c: ALaurent) -> "WeightLaurent":
        out = WeightLaurent()
        out.terms = {e: v * c for e, v in self.terms.items() if not (v * c).is_zero()}
        return out

    def __mul__(self, other):
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                acc = terms.get(e, A_ZERO) + c1 * c2
                if acc.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = acc
        out = WeightLaurent()
        out.terms = terms
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, WeightLaurent) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r})*h^{e}" for e, c in sorted(self.terms.items()))


W_ONE = WeightLaurent.const(1)


def nu_classes(j: int) -> list:
    """The eight half-weight classes attached to v_j, in h-units."""
    if j not in (1, 2, 3):
        raise ValueError("direction index must be 1, 2 or 3")
    out = []
    for i1, i2 in _PAIRINGS[j]:
        for s1, s2 in iproduct((1, -1), repeat=2):
            e = [0, 0, 0, 0]
            e[i1], e[i2] = s1, s2
            out.append(tuple(e))
    return out


def peripheral_a(j: int) -> WeightLaurent:
    """a_j = h_j + h_j^{-1}."""
    e = [0, 0, 0, 0]
    e[j - 1] = 1
    plus = tuple(e)
    e[j - 1] = -1
    return WeightLaurent({plus: 1, tuple(e): 1})


def embed_periph(cp: CoeffPoly) -> WeightLaurent:
    """Embed a PERIPH-ring polynomial via a_j = h_j + h_j^{-1}."""
    if cp.ring != "PERIPH":
        raise ValueError("expected a PERIPH polynomial")
    out = WeightLaurent()
    avals = [peripheral_a(j) for j in (1, 2, 3, 4)]
    for exps, c in cp.terms.items():
        term = WeightLaurent.const(c)
        for j, e in enumerate(exps):
            for _ in range(e):
                term = term * avals[j]
        out = out + term
    return out


def s04_in_periph(cp: CoeffPoly) -> CoeffPoly:
    """Substitute R10, R01, R11, y by their peripheral expressions."""
    if cp.ring != "S04":
        raise ValueError("expected an S04 polynomial")
    P = "PERIPH"
    a1, a2, a3, a4 = (CoeffPoly.var(P, f"a{j}") for j in (1, 2, 3, 4))
    values = {
        "R10": a1 * a2 + a3 * a4,
        "R01": a1 * a3 + a2 * a4,
        "R11": a1 * a4 + a2 * a3,
        "y": (a1 * a2 * a3 * a4 + a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4
              + CoeffPoly.const(P, ALaurent({4: 1, 0: -2, -4: 1}))),
    }
    return cp.substitute(values)


def embed_s04(cp: CoeffPoly) -> WeightLaurent:
    """Embed an S04-ring polynomial into the half-weight group algebra."""
    return embed_periph(s04_in_periph(cp))


def degree8_product(j: int) -> list:
    """x-coefficients of prod over the eight classes of (1 + t^class x)."""
    coeffs = [W_ONE]
    for e in nu_classes(j):
        mono = WeightLaurent.monomial(e)
        new = [WeightLaurent() for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            new[i] = new[i] + c
            new[i + 1] = new[i + 1] + c * mono
        coeffs = new
    return coeffs


def degree8_rhs(j: int) -> list:
    """The same eight-fold product written in R/y variables.

    Palindromic: 1, r, y-A^4-2-A^{-4}, s1 s2 - r,
    s1^2+s2^2-2y+2A^4+2+2A^{-4}, then mirrored.  (r, s1, s2) is the
    variable assignment of the v_j wall.
    """
    S = "S04"
    names = {1: ("R10", "R01", "R11"), 2: ("R01", "R10", "R11"),
             3: ("R11", "R10", "R01")}[j]
    r, s1, s2 = (CoeffPoly.var(S, nm) for nm in names)
    y = CoeffPoly.var(S, "y")
    c2 = y - CoeffPoly.const(S, ALaurent({4: 1, 0: 2, -4: 1}))
    c3 = s1 * s2 - r
    c4 = (s1 * s1 + s2 * s2 - 2 * y
          + CoeffPoly.const(S, ALaurent({4: 2, 0: 2, -4: 2})))
    one = CoeffPoly.one(S)
    return [one, r, c2, c3, c4, c3, c2, r, one]


def quartic_factor(i1: int, i2: int) -> list:
    """(1 + a_{i1} a_{i2} x + (a_{i1}^2 + a_{i2}^2 - 2) x^2
    + a_{i1} a_{i2} x^3 + x^4) over the weight algebra."""
    ai, aj = peripheral_a(i1), peripheral_a(i2)
    two = WeightLaurent.const(2)
    return [W_ONE, ai * aj, ai * ai + aj * aj - two, ai * aj, W_ONE]


# ---------------------------------------------------------------------------
# peripheral substitution with a bracelets certificate
# ---------------------------------------------------------------------------

def _t_mul_single(m: int, n: int) -> list:
    """T_m T_n in one variable as [(index, scalar)], with T_0 kept as
    index 0 and the convention T_m T_m = T_{2m} + 2."""
    if m == 0:
        return [(n, 1)]
    if n == 0:
        return [(m, 1)]
    if m == n:
        return [(m + n, 1), (0, 2)]
    return [(m + n, 1), (abs(m - n), 1)]


def _cert_mul(c1: dict, c2: dict) -> dict:
    """Product of two certificates {(n1..n4): ALaurent}."""
    out: dict = {}
    for e1, v1 in c1.items():
        for e2, v2 in c2.items():
            coeff = v1 * v2
            if coeff.is_zero():
                continue
            parts = [(tuple(), coeff)]
            for j in range(4):
                new = []
                for idx, sc in _t_mul_single(e1[j], e2[j]):
                    for key, v in parts:
                        new.append((key + (idx,), v * sc if sc != 1 else v))
                parts = new
            for key, v in parts:
                acc = out.get(key, A_ZERO) + v
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
    return out


def _cert_add(c1: dict, c2: dict) -> dict:
    out = dict(c1)
    for e, v in c2.items():
        acc = out.get(e, A_ZERO) + v
        if acc.is_zero():
            out.pop(e, None)
        else:
            out[e] = acc
    return out


_CERT_BASE = {
    "R10": {(1, 1, 0, 0): A_ONE, (0, 0, 1, 1): A_ONE},
    "R01": {(1, 0, 1, 0): A_ONE, (0, 1, 0, 1): A_ONE},
    "R11": {(1, 0, 0, 1): A_ONE, (0, 1, 1, 0): A_ONE},
    # y = T1 T1 T1 T1 + sum_j T2(a_j) + A^4 + 6 + A^{-4}
    "y": {(1, 1, 1, 1): A_ONE,
          (2, 0, 0, 0): A_ONE, (0, 2, 0, 0): A_ONE,
          (0, 0, 2, 0): A_ONE, (0, 0, 0, 2): A_ONE,
          (0, 0, 0, 0): ALaurent({4: 1, 0: 6, -4: 1})},
}


def peripheral_substitute(cp: CoeffPoly):
    """Express an S04 polynomial in peripheral variables, with a
    bracelets certificate.

    Returns (periph, certificate): periph is the exact substitution into
    a1..a4; certificate maps Chebyshev multi-indices (n1..n4) to
    coefficients in Z_{>=0}[A^{+-1}], meaning sum c * prod_j T_{n_j}(a_j).
    The certificate exists only for inputs with coefficients in
    Z_{>=0}[A^{+-1}][R.., y]; a negative coefficient raises ValueError.
    """
    if cp.ring != "S04":
        raise ValueError("expected an S04 polynomial")
    if not cp.is_nonnegative():
        raise ValueError("certificate unavailable: input has a negative coefficient")
    periph = s04_in_periph(cp)
    names = ("R10", "R01", "R11", "y")
    cert: dict = {}
    for exps, c in cp.terms.items():
        term = {(0, 0, 0, 0): c}
        for name, e in zip(names, exps):
            for _ in range(e):
                term = _cert_mul(term, _CERT_BASE[name])
        cert = _cert_add(cert, term)
    return periph, cert


def certificate_to_periph(cert: dict) -> CoeffPoly:
    """Expand a bracelets certificate back into the a-variables."""
    P = "PERIPH"
    out = CoeffPoly.zero(P)
    for key, c in cert.items():
        term = CoeffPoly.const(P, c)
        for j, n in enumerate(key):
            if n == 0:
                continue
            tn = chebyshev(n)
            aj = CoeffPoly.var(P, f"a{j + 1}")
            val = CoeffPoly.zero(P)
            power = CoeffPoly.one(P)
            for coeff in tn:
                if coeff:
                    val = val + power * coeff
                power = power * aj
            term = term * val
        out = out + term
    return out
