"""Multivariate coefficient polynomials and truncated wall-variable series.

A CoeffPoly is a polynomial in a fixed named variable set with ALaurent
coefficients.  Three variable sets occur:

    S04     (R10, R01, R11, y)   -- 4-punctured sphere
    S11     (z,)                 -- 1-punctured torus
    PERIPH  (a1, a2, a3, a4)     -- peripheral curve variables

Exponents are nonnegative; variables commute.  A RaySeries is a truncated
power series in a formal wall variable whose coefficients are CoeffPoly
with unit constant term.
"""

from __future__ import annotations

from .alaurent import ALaurent, A_ONE, A_ZERO, _coerce as _coerce_A

RING_VARS = {
    "S04": ("R10", "R01", "R11", "y"),
    "S11": ("z",),
    "PERIPH": ("a1", "a2", "a3", "a4"),
}


class CoeffPoly:
    """Sparse polynomial over a named variable set with ALaurent coefficients.

    terms maps an exponent tuple (one entry per ring variable) to a
    nonzero ALaurent.  Immutable and hashable.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: str, terms=None):
        if ring not in RING_VARS:
            raise ValueError(f"unknown ring tag {ring!r}")
        nvars = len(RING_VARS[ring])
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {ring}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if not isinstance(c, ALaurent):
                c = _coerce_A(c)
            if not c.is_zero():
                clean[exps] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffPoly is immutable")

    @classmethod
    def _raw(cls, ring: str, terms: dict) -> "CoeffPoly":
        """Internal constructor for dicts already in canonical form."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    # -- constructors ----------------------------------------------------

    @staticmethod
    def const(ring: str, c) -> "CoeffPoly":
        nvars = len(RING_VARS[ring])
        return CoeffPoly(ring, {(0,) * nvars: _coerce_A(c)})

    @staticmethod
    def one(ring: str) -> "CoeffPoly":
        return CoeffPoly.const(ring, 1)

    @staticmethod
    def zero(ring: str) -> "CoeffPoly":
        return CoeffPoly(ring, {})

    @staticmethod
    def var(ring: str, name: str) -> "CoeffPoly":
        names = RING_VARS[ring]
        if name not in names:
            raise ValueError(f"{name!r} is not a variable of ring {ring}")
        exps = tuple(1 if v == name else 0 for v in names)
        return CoeffPoly(ring, {exps: A_ONE})

    # -- ring structure ---------------------------------------------------

    def _coerce(self, other) -> "CoeffPoly":
        if isinstance(other, CoeffPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, ALaurent)):
            return CoeffPoly.const(self.ring, other)
        raise TypeError(f"cannot coerce {type(other).__name__} to CoeffPoly")

    def __add__(self, other):
        if not isinstance(other, CoeffPoly) or other.ring != self.ring:
            other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            c2 = terms.get(e, A_ZERO) + c
            if c2.terms:
                terms[e] = c2
            else:
                del terms[e]
        return CoeffPoly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, CoeffPoly) or other.ring != self.ring:
            other = self._coerce(other)
        terms: dict = {}
        get = terms.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(sum, zip(e1, e2)))
                c = get(e)
                c = c1 * c2 if c is None else c + c1 * c2
                if c.terms:
                    terms[e] = c
                else:
                    del terms[e]
        return CoeffPoly._raw(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = CoeffPoly.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structural maps ---------------------------------------------------

    def bar(self) -> "CoeffPoly":
        """Apply A -> A^{-1} to every coefficient."""
        return CoeffPoly._raw(self.ring, {e: c.bar() for e, c in self.terms.items()})

    def map_coeffs(self, f) -> "CoeffPoly":
        out = {}
        for e, c in self.terms.items():
            c2 = f(c)
            if c2.terms:
                out[e] = c2
        return CoeffPoly._raw(self.ring, out)

    def permute_vars(self, perm: dict) -> "CoeffPoly":
        """Rename variables by the permutation {old_name: new_name}."""
        names = RING_VARS[self.ring]
        index = {v: i for i, v in enumerate(names)}
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(names)
            for i, v in enumerate(names):
                new[index[perm.get(v, v)]] += e[i]
            terms[tuple(new)] = c
        return CoeffPoly(self.ring, terms)

    def substitute(self, values: dict) -> "CoeffPoly":
        """Substitute some variables by CoeffPoly values (same target ring).

        values maps variable names to CoeffPoly in the target ring; any
        variable not listed must not occur (or must itself be a target
        variable of the same name).
        """
        names = RING_VARS[self.ring]
        target = None
        for v in values.values():
            target = v.ring
            break
        if target is None:
            return self
        out = CoeffPoly.zero(target)
        for e, c in self.terms.items():
            term = CoeffPoly.const(target, c)
            for i, v in enumerate(names):
                if e[i] == 0:
                    continue
                if v in values:
                    term = term * values[v] ** e[i]
                else:
                    term = term * CoeffPoly.var(target, v) ** e[i]
            out = out + term
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_nonnegative(self) -> bool:
        """True when every integer coefficient of every A-power is >= 0."""
        return all(c.is_nonnegative() for c in self.terms.values())

    def constant_coeff(self) -> ALaurent:
        nvars = len(RING_VARS[self.ring])
        return self.terms.get((0,) * nvars, A_ZERO)

    def at_A_one(self) -> dict:
        """Collapse A -> 1; returns {exponent tuple: int}."""
        out = {}
        for e, c in self.terms.items():
            v = c.at_A_one()
            if v:
                out[e] = v
        return out

    def sorted_items(self):
        return tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, ALaurent)):
            other = CoeffPoly.const(self.ring, other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, self.sorted_items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        if not self.terms:
            return "0"
        names = RING_VARS[self.ring]
        parts = []
        for e, c in self.sorted_items():
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(names, e) if k
            )
            cs = repr(c)
            if "+" in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)


def specialize_A4_to_A2(p: CoeffPoly) -> CoeffPoly:
    """Halve every A-exponent (the A^4 -> A^2 replacement).

    Every A-exponent must be even; an odd exponent signals input outside
    the image of the 4-punctured-sphere calculus.  Variable renaming
    (R -> 0, y -> z) is a separate companion substitution.
    """
    return p.map_coeffs(lambda c: c.halve_exponents())


def s04_to_s11(p: CoeffPoly) -> CoeffPoly:
    """Full specialization: R10 = R01 = R11 = 0, y = z, then A^4 -> A^2."""
    if p.ring != "S04":
        raise ValueError("s04_to_s11 expects an S04 polynomial")
    terms = {}
    for (r10, r01, r11, ydeg), c in p.terms.items():
        if r10 or r01 or r11:
            continue
        cc = c.halve_exponents()
        if cc.is_zero():
            continue
        key = (ydeg,)
        terms[key] = terms.get(key, A_ZERO) + cc
    return CoeffPoly("S11", {k: v for k, v in terms.items() if not v.is_zero()})


class RaySeries:
    """Truncated power series c_0 + c_1 x + ... + c_N x^N in a wall variable.

    The constant term must be 1 (wall functions are 1 mod the wall
    monomial).  Trailing coefficients may be zero; `order` is the
    truncation bound N.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("coefficient list does not match order")
        ring = coeffs[0].ring
        if coeffs[0] != CoeffPoly.one(ring):
            raise ValueError("ray series must have constant term 1")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("RaySeries is immutable")

    @property
    def ring(self) -> str:
        return self.coeffs[0].ring

    def __getitem__(self, k: int) -> CoeffPoly:
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other):
        return (isinstance(other, RaySeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RaySeries(order={self.order}, coeffs={list(self.coeffs)!r})"


def _poly_list_mul(a: list, b: list, order: int) -> list:
    """Multiply two coefficient lists, truncating at `order`."""
    ring = a[0].ring
    out = [CoeffPoly.zero(ring) for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if i > order or ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            if bj.is_zero():
                continue
            out[i + j] = out[i + j] + ai * bj
    return out


def _invert_series(factor: list, order: int) -> list:
    """Inverse power series of a polynomial with constant term 1."""
    ring = factor[0].ring
    if factor[0] != CoeffPoly.one(ring):
        raise ValueError("denominator factor must have constant term 1")
    inv = [CoeffPoly.zero(ring) for _ in range(order + 1)]
    inv[0] = CoeffPoly.one(ring)
    for m in range(1, order + 1):
        acc = CoeffPoly.zero(ring)
        for i in range(1, min(m, len(factor) - 1) + 1):
            if not factor[i].is_zero():
                acc = acc + factor[i] * inv[m - i]
        inv[m] = -acc
    return inv


def expand_rational_list(numerator: list, denom_factors, order: int) -> list:
    """Coefficient list of numerator / prod(factor^mult), truncated.

    numerator and each factor are coefficient lists (CoeffPoly entries,
    low degree first); every factor must have constant term 1.  The
    expansion is exact: no floating point, no division remainder.
    """
    ring = numerator[0].ring
    series = [numerator[k] if k < len(numerator) else CoeffPoly.zero(ring)
              for k in range(order + 1)]
    for factor, mult in denom_factors:
        inv = _invert_series(list(factor), order)
        for _ in range(mult):
            series = _poly_list_mul(series, inv, order)
    return series


def expand_rational_series(numerator: list, denom_factors, order: int) -> RaySeries:
    """Like expand_rational_list, packaged as a RaySeries.

    The numerator must additionally have constant term 1 so the result
    is a legitimate wall function.
    """
    return RaySeries(order, expand_rational_list(numerator, denom_factors, order))
