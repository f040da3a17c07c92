"""Exact coefficient rings: QQ, GF(p), ZZ and ZZ/m.

Elements are plain Python numbers: ``Fraction`` for QQ, ``int`` otherwise
(canonical residues in ``[0, m)`` for the finite rings).  A ``BaseRing`` is
an immutable descriptor that knows how to do arithmetic on them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

QQ_KIND = "QQ"
GF_KIND = "GF"
ZZ_KIND = "ZZ"
ZMOD_KIND = "ZZmod"


class RingError(ValueError):
    """Invalid ring descriptor or element."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def factor_int(n: int) -> dict[int, int]:
    """Prime factorisation of ``n >= 1`` by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class BaseRing:
    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind == GF_KIND:
            if not _is_prime(self.modulus):
                raise RingError(f"GF({self.modulus}): modulus is not prime")
        elif self.kind == ZMOD_KIND:
            if self.modulus < 1:
                raise RingError(f"ZZ/{self.modulus}: modulus must be >= 1")
        elif self.kind in (QQ_KIND, ZZ_KIND):
            if self.modulus != 0:
                raise RingError(f"{self.kind} takes no modulus")
        else:
            raise RingError(f"unknown ring kind {self.kind!r}")

    # -- descriptors -----------------------------------------------------
    @property
    def is_field(self) -> bool:
        return self.kind in (QQ_KIND, GF_KIND)

    @property
    def is_finite(self) -> bool:
        return self.kind in (GF_KIND, ZMOD_KIND)

    @property
    def is_zero_ring(self) -> bool:
        return self.kind == ZMOD_KIND and self.modulus == 1

    @property
    def characteristic(self) -> int:
        return self.modulus

    def __str__(self):
        if self.kind == QQ_KIND:
            return "QQ"
        if self.kind == ZZ_KIND:
            return "ZZ"
        if self.kind == GF_KIND:
            return f"GF({self.modulus})"
        return f"ZZ/{self.modulus}"

    # -- elements --------------------------------------------------------
    def __call__(self, x) -> int | Fraction:
        """Coerce an int/Fraction into this ring, raising if impossible."""
        if isinstance(x, bool):
            x = int(x)
        if self.kind == QQ_KIND:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.kind == ZZ_KIND:
                raise RingError(f"{x} is not an integer")
            else:
                den = x.denominator % self.modulus
                inv = self.inverse(den)
                if inv is None:
                    raise RingError(f"{x}: denominator not invertible in {self}")
                return (x.numerator * inv) % self.modulus
        if not isinstance(x, int):
            raise RingError(f"cannot coerce {x!r} into {self}")
        if self.kind == ZZ_KIND:
            return x
        return x % self.modulus

    def elements(self):
        """All elements of a finite ring, in canonical order."""
        if not self.is_finite:
            raise RingError(f"{self} is infinite")
        return range(self.modulus)

    def zero(self):
        return Fraction(0) if self.kind == QQ_KIND else 0

    def one(self):
        if self.kind == QQ_KIND:
            return Fraction(1)
        return 1 % self.modulus if self.is_finite else 1

    def add(self, a, b):
        s = a + b
        return s % self.modulus if self.is_finite else s

    def sub(self, a, b):
        s = a - b
        return s % self.modulus if self.is_finite else s

    def neg(self, a):
        return (-a) % self.modulus if self.is_finite else -a

    def mul(self, a, b):
        s = a * b
        return s % self.modulus if self.is_finite else s

    def reduce(self, a):
        return a % self.modulus if self.is_finite else a

    # -- divisibility ----------------------------------------------------
    def is_unit(self, a) -> bool:
        if self.is_field:
            return a != 0 or self.is_zero_ring
        if self.kind == ZZ_KIND:
            return a in (1, -1)
        return math.gcd(a, self.modulus) == 1

    def inverse(self, a):
        """Multiplicative inverse, or ``None`` if ``a`` is not a unit."""
        if self.kind == QQ_KIND:
            return None if a == 0 else 1 / Fraction(a)
        if self.kind == ZZ_KIND:
            return a if a in (1, -1) else None
        m = self.modulus
        if m == 1:
            return 0
        if math.gcd(a, m) != 1:
            return None
        return pow(a, -1, m)

    def ideal_size(self, a) -> int:
        """Canonical nonnegative generator of the principal ideal (a).

        Smaller (in the divisibility sense) means a larger ideal; the value
        is used to pick the strongest reducer among several candidates.
        """
        if self.is_field:
            return 0 if a == 0 else 1
        if self.kind == ZZ_KIND:
            return abs(a)
        return math.gcd(a, self.modulus)

    def divide(self, a, b):
        """Return q with b*q == a, or ``None`` when b does not divide a."""
        if self.is_field:
            if b == 0:
                return self.zero() if a == 0 else None
            if self.kind == QQ_KIND:
                return Fraction(a) / b
            return (a * pow(b, -1, self.modulus)) % self.modulus
        if self.kind == ZZ_KIND:
            if b == 0:
                return 0 if a == 0 else None
            q, r = divmod(a, b)
            return q if r == 0 else None
        m = self.modulus
        g = math.gcd(b, m)
        if a % g:
            return None
        mg = m // g
        if mg == 1:
            return 0
        return ((a // g) * pow((b // g) % mg, -1, mg)) % mg

    def divmod(self, a, b):
        """Division with canonical remainder: a == q*b + r, r == 0 iff b | a.

        Over QQ and GF(p) the remainder is always 0 for b != 0.  Over ZZ the
        remainder lies in [0, |b|); over ZZ/m in [0, gcd(b, m)).
        """
        if b == 0 or (self.kind == ZMOD_KIND and math.gcd(b, self.modulus) == self.modulus):
            return self.zero(), a
        if self.is_field:
            return self.divide(a, b), self.zero()
        if self.kind == ZZ_KIND:
            r = a % abs(b)
            return (a - r) // b, r
        g = math.gcd(b, self.modulus)
        r = a % g
        return self.divide((a - r) % self.modulus, b), r

    def gcdext(self, a, b):
        """Return (g, s, t) with g = s*a + t*b generating the ideal (a, b).

        g is the canonical generator (nonnegative; gcd with m over ZZ/m).
        """
        if self.is_field:
            if a != 0:
                return self.one(), self.inverse(a), self.zero()
            if b != 0:
                return self.one(), self.zero(), self.inverse(b)
            return self.zero(), self.zero(), self.zero()
        if self.kind == ZZ_KIND:
            return _xgcd_nonneg(a, b)
        m = self.modulus
        g, s, t = _xgcd_nonneg(a, b)
        g2, s2, _ = _xgcd_nonneg(g, m)
        return g2 % m, (s * s2) % m, (t * s2) % m

    def lcm_cofactors(self, a, b):
        """Return (c, x, y) with x*a == y*b == c generating (a) ∩ (b).

        Returns ``None`` when the intersection is the zero ideal.
        """
        if self.is_field:
            if a == 0 or b == 0:
                return None
            return self.one(), self.inverse(a), self.inverse(b)
        if self.kind == ZZ_KIND:
            if a == 0 or b == 0:
                return None
            c = abs(a * b) // math.gcd(a, b)
            return c, c // a, c // b
        m = self.modulus
        ga, gb = math.gcd(a, m), math.gcd(b, m)
        c = ga * gb // math.gcd(ga, gb)
        if c % m == 0:
            return None
        return c, self.divide(c, a), self.divide(c, b)

    def annihilator(self, a):
        """Generator of ann(a); zero for domains (unless a == 0)."""
        if a == 0:
            return self.one()
        if self.kind != ZMOD_KIND:
            return self.zero()
        m = self.modulus
        return (m // math.gcd(a, m)) % m

    def unit_normal(self, a):
        """Unit u such that u*a is the canonical associate of a."""
        if a == 0:
            return self.one()
        if self.is_field:
            return self.inverse(a)
        if self.kind == ZZ_KIND:
            return -1 if a < 0 else 1
        m = self.modulus
        g = math.gcd(a, m)
        mg = m // g
        u0 = pow((a // g) % mg, -1, mg) if mg > 1 else 0
        # lift u0 from ZZ/(m/g) to a unit of ZZ/m
        for k in range(g + 1):
            u = u0 + k * mg
            if math.gcd(u, m) == 1:
                return u % m
        raise AssertionError("no unit lift found")  # pragma: no cover

    def fmt(self, a) -> str:
        if isinstance(a, Fraction) and a.denominator == 1:
            return str(a.numerator)
        return str(a)


def _xgcd(a: int, b: int):
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _xgcd_nonneg(a: int, b: int):
    g, s, t = _xgcd(a, b)
    if g < 0:
        return -g, -s, -t
    return g, s, t


def parse_ring(text: str) -> BaseRing:
    """``QQ``, ``ZZ``, ``GF(p)`` or ``ZZ/m`` (surrounding spaces ignored)."""
    t = text.replace(" ", "")
    if t in ("QQ", "ZZ"):
        return BaseRing(t)
    m = re.fullmatch(r"GF\((\d+)\)", t)
    if m:
        return BaseRing(GF_KIND, int(m.group(1)))
    m = re.fullmatch(r"ZZ/(\d+)", t)
    if m:
        return BaseRing(ZMOD_KIND, int(m.group(1)))
    raise RingError(f"unknown ring {text.strip()!r} (expected QQ, ZZ, GF(p) or ZZ/m)")


def QQ() -> BaseRing:
    return BaseRing(QQ_KIND)


def ZZ() -> BaseRing:
    return BaseRing(ZZ_KIND)


def GF(p: int) -> BaseRing:
    return BaseRing(GF_KIND, p)


def Zmod(m: int) -> BaseRing:
    return BaseRing(ZMOD_KIND, m)


@dataclass(frozen=True)
class BaseIdeal:
    """Principal ideal of a base ring, stored by its canonical generator."""

    ring: BaseRing
    generator: int | Fraction
    original_generators: tuple = field(default=(), compare=False)

    def contains(self, r) -> bool:
        return self.ring.divide(self.ring(r), self.generator) is not None

    @property
    def is_zero(self) -> bool:
        return self.generator == 0

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.generator)

    def __str__(self):
        return f"({self.ring.fmt(self.generator)})"


def is_unit(r, R: BaseRing) -> bool:
    return R.is_unit(R(r))


def ideal_normalize(gens, R: BaseRing) -> BaseIdeal:
    """Principal canonical generator of the ideal spanned by ``gens``."""
    gens = tuple(R(g) for g in gens)
    if R.is_field:
        g = R.one() if any(x != 0 for x in gens) else R.zero()
    elif R.kind == ZZ_KIND:
        g = reduce(math.gcd, gens, 0)
    else:
        g = reduce(math.gcd, gens, R.modulus) % R.modulus
    return BaseIdeal(R, g, gens)


def quotient_ring(R: BaseRing, c: BaseIdeal) -> BaseRing:
    """Descriptor of R/c inside the supported family."""
    g = c.generator
    if R.is_field:
        return R if g == 0 else Zmod(1)
    if R.kind == ZZ_KIND:
        if g == 0:
            return R
        return Zmod(abs(g))
    return Zmod(math.gcd(R.modulus, g))


def reduce_element(r, R: BaseRing, c: BaseIdeal):
    """Canonical image of r in R/c."""
    Q = quotient_ring(R, c)
    if Q is R or Q == R:
        return R(r)
    if Q.modulus == 1:
        return 0
    if isinstance(r, Fraction):
        return Q(r)
    return int(r) % Q.modulus


def canonical_lift(r, Q: BaseRing, R: BaseRing):
    """Canonical representative in R of an element of the quotient Q of R."""
    if Q == R:
        return r
    if R.kind == QQ_KIND:
        return Fraction(0)
    # Q = ZZ/m; residues are already in [0, m)
    return R(int(r))
