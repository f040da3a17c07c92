"""Sparse multivariate polynomials over a ``BaseRing``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .orders import GREVLEX, MonomialOrder
from .ring import BaseIdeal, BaseRing, canonical_lift, ideal_normalize, quotient_ring, reduce_element


class _MinusInfinity:
    """Degree of the zero polynomial: below every integer, no arithmetic."""

    __slots__ = ()

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return not isinstance(other, _MinusInfinity)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _MinusInfinity)

    def __eq__(self, other):
        return isinstance(other, _MinusInfinity)

    def __hash__(self):
        return hash("-inf")


MINUS_INFINITY = _MinusInfinity()


class PolyError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    base: BaseRing
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise PolyError(f"duplicate variable names in {self.variables}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, v: str | int) -> int:
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise PolyError(f"variable index {v} out of range")
            return v
        try:
            return self.variables.index(v)
        except ValueError:
            raise PolyError(f"{v!r} is not a variable of {self}") from None

    def __str__(self):
        return f"{self.base}[{', '.join(self.variables)}]"

    # -- constructors ----------------------------------------------------
    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.constant(1)

    def constant(self, c) -> MultiPoly:
        return MultiPoly(self, {(0,) * self.nvars: self.base(c)})

    def var(self, v: str | int) -> MultiPoly:
        i = self.index(v)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return MultiPoly(self, {exp: self.base.one()})

    def gens(self) -> list[MultiPoly]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, c=1) -> MultiPoly:
        return MultiPoly(self, {tuple(exp): self.base(c)})

    def __call__(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.ring == self:
                return x
            return self.embed(x)
        if isinstance(x, str):
            from .syntax import parse_poly

            return parse_poly(x, self)
        return self.constant(x)

    def parse(self, text: str) -> MultiPoly:
        from .syntax import parse_poly

        return parse_poly(text, self)

    def embed(self, f: MultiPoly) -> MultiPoly:
        """Map f from a ring whose variables are a subset of ours."""
        if f.ring.base != self.base:
            raise PolyError(f"cannot embed {f.ring} into {self}: base rings differ")
        pos = [self.index(v) for v in f.ring.variables]
        out = {}
        for exp, c in f.terms.items():
            e = [0] * self.nvars
            for i, k in zip(pos, exp):
                e[i] = k
            out[tuple(e)] = c
        return MultiPoly(self, out, _trusted=True)

    def with_base(self, base: BaseRing) -> PolyRing:
        return PolyRing(base, self.variables)


class MultiPoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero
    canonical coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict | None = None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        base = ring.base
        n = ring.nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise PolyError(f"bad exponent {exp} for {ring}")
            c = base(c)
            if c != 0:
                clean[exp] = c
        self.terms = clean

    # -- basic queries ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.base.zero())

    def coefficients(self) -> list:
        return list(self.terms.values())

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.base.zero())

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(e) for e in self.terms)

    def degree_in(self, v):
        i = self.ring.index(v)
        if not self.terms:
            return MINUS_INFINITY
        return max(e[i] for e in self.terms)

    def coeff_in(self, v, d: int) -> MultiPoly:
        """Coefficient of v^d, viewing self in (k[other vars])[v]."""
        i = self.ring.index(v)
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == d:
                out[exp[:i] + (0,) + exp[i + 1:]] = c
        return MultiPoly(self.ring, out, _trusted=True)

    def variables_used(self) -> set[int]:
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return used

    def leading_exp(self, order: MonomialOrder = GREVLEX):
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: MonomialOrder = GREVLEX):
        return self.terms[self.leading_exp(order)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise PolyError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.ring, _add(self.ring.base, self.terms, other.terms, 1), _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring.base
        return MultiPoly(self.ring, _add(R, self.terms, other.terms, R.neg(R.one())), _trusted=True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        R = self.ring.base
        return MultiPoly(self.ring, {e: R.neg(c) for e, c in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly(self.ring, _mul(self.ring.base, self.terms, other.terms), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> MultiPoly:
        R = self.ring.base
        c = R(c)
        out = {}
        for e, a in self.terms.items():
            v = R.mul(a, c)
            if v != 0:
                out[e] = v
        return MultiPoly(self.ring, out, _trusted=True)

    def mul_term(self, exp, c) -> MultiPoly:
        R = self.ring.base
        out = {}
        for e, a in self.terms.items():
            v = R.mul(a, c)
            if v != 0:
                out[tuple(x + y for x, y in zip(e, exp))] = v
        return MultiPoly(self.ring, out, _trusted=True)

    def diff(self, v) -> MultiPoly:
        i = self.ring.index(v)
        R = self.ring.base
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                val = R.mul(R(e[i]), c)
                if val != 0:
                    out[e[:i] + (e[i] - 1,) + e[i + 1:]] = val
        return MultiPoly(self.ring, out, _trusted=True)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        from .syntax import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self}, {self.ring})"


def _add(R: BaseRing, a: dict, b: dict, sign) -> dict:
    out = dict(a)
    for e, c in b.items():
        if sign != 1:
            c = R.mul(sign, c)
        v = R.add(out.get(e, R.zero()), c)
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _mul(R: BaseRing, a: dict, b: dict) -> dict:
    out: dict = {}
    zero = R.zero()
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, zero) + ca * cb
    return {e: R.reduce(c) for e, c in out.items() if R.reduce(c) != 0}


# -- module-level operations ---------------------------------------------


def content(f: MultiPoly) -> BaseIdeal:
    """Ideal of k generated by the coefficients of f."""
    return ideal_normalize(f.coefficients(), f.ring.base)


def is_monic_in(f: MultiPoly, v) -> bool:
    """True iff the leading coefficient of f in v is a unit constant of k."""
    if f.is_zero():
        return False
    d = f.degree_in(v)
    lead = f.coeff_in(v, d)
    return lead.is_constant() and f.ring.base.is_unit(lead.constant_coeff())


def reduce_coefficients(f: MultiPoly, c: BaseIdeal) -> MultiPoly:
    """Image of f in (k/c)[X]."""
    R = f.ring.base
    Q = quotient_ring(R, c)
    ring = f.ring.with_base(Q)
    out = {}
    for e, a in f.terms.items():
        v = reduce_element(a, R, c)
        if v != 0:
            out[e] = v
    return MultiPoly(ring, out, _trusted=True)


def lift_coefficients(f: MultiPoly, ring: PolyRing) -> MultiPoly:
    """Coefficientwise canonical lift of f from (k/c)[X] to ``ring``."""
    Q, R = f.ring.base, ring.base
    return MultiPoly(ring, {e: canonical_lift(a, Q, R) for e, a in f.terms.items()})


def extend_ring(R: PolyRing, count: int, prefix: str) -> PolyRing:
    """Append ``count`` fresh variables ``prefix1 .. prefix<count>``."""
    if count < 0:
        raise PolyError("count must be nonnegative")
    if count == 0:
        return R
    fresh = tuple(f"{prefix}{i}" for i in range(1, count + 1))
    clash = set(fresh) & set(R.variables)
    if clash:
        raise PolyError(f"fresh variables collide with existing ones: {sorted(clash)}")
    return PolyRing(R.base, R.variables + fresh)


def fresh_prefix(R: PolyRing, wanted: str) -> str:
    """First prefix derived from ``wanted`` whose numbered names are all free."""
    taken = set(R.variables)
    candidate = wanted
    k = 0
    while any(v.startswith(candidate) and v[len(candidate):].isdigit() for v in taken):
        k += 1
        candidate = f"{wanted}{'_' * k}"
    return candidate


def change_ring(f: MultiPoly, ring: PolyRing) -> MultiPoly:
    return ring.embed(f)


def polys_in(ring: PolyRing, fs: Iterable) -> list[MultiPoly]:
    return [ring(f) for f in fs]
