"""Polynomial text syntax shared by the library, the CLI and certificates.

    3*x^2*y - x/2 + 7        explicit products
    3x^2 y                   '*' may be omitted
    (x + 1)^3                parentheses, nonnegative integer powers

Division is only allowed by constants and must be exact in the base ring.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .orders import GREVLEX
from .poly import MultiPoly, PolyRing
from .ring import QQ_KIND, RingError


class ParseError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.message = message
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            tokens.append(("num", int(m.group(1)), col))
        elif m.group(2):
            tokens.append(("id", m.group(2), col))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, col = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", col)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 1)
        f = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", col)
        return f

    def expr(self) -> MultiPoly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def _starts_factor(self, tok) -> bool:
        kind, val, _ = tok
        return kind in ("num", "id") or (kind == "op" and val == "(")

    def term(self) -> MultiPoly:
        f = self.factor()
        while True:
            tok = self.peek()
            kind, val, col = tok
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                g = self.factor()
                f = self._divide(f, g, col)
            elif self._starts_factor(tok):
                f = f * self.factor()
            else:
                return f

    def _divide(self, f: MultiPoly, g: MultiPoly, col: int) -> MultiPoly:
        if not g.is_constant() or g.is_zero():
            raise ParseError("division only by nonzero constants", col)
        R = self.ring.base
        d = g.constant_coeff()
        if R.kind != "ZZ" and not R.is_unit(d):
            raise ParseError(f"{R.fmt(d)} is not invertible in {R}", col)
        out = {}
        for e, c in f.terms.items():
            q = R.divide(c, d)
            if q is None:
                raise ParseError(f"coefficient {R.fmt(c)}/{R.fmt(d)} is not valid in {R}", col)
            out[e] = q
        return MultiPoly(self.ring, out)

    def factor(self) -> MultiPoly:
        kind, val, col = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        f = self.atom()
        kind, val, col = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, k, col2 = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", col2)
            f = f ** k
        return f

    def atom(self) -> MultiPoly:
        kind, val, col = self.take()
        if kind == "num":
            try:
                return self.ring.constant(val)
            except RingError as exc:
                raise ParseError(str(exc), col) from None
        if kind == "id":
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r}", col)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect(")")
            return f
        raise ParseError("expected a number, variable or '('" if kind != "end" else "unexpected end of input", col)


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    return _Parser(text, ring).parse()


def _fmt_coeff(c, ring: PolyRing) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_monomial(exp, variables) -> str:
    parts = []
    for v, e in zip(variables, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(f: MultiPoly) -> str:
    """Canonical text: terms by descending grevlex, '*' between factors."""
    if f.is_zero():
        return "0"
    ring = f.ring
    out = []
    for exp, c in f.sorted_terms(GREVLEX):
        neg = ring.base.kind in (QQ_KIND, "ZZ") and c < 0
        a = -c if neg else c
        mono = format_monomial(exp, ring.variables)
        cs = _fmt_coeff(a, ring)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
