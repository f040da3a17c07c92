"""Line-oriented problem files.

    # comment
    ring  = ZZ                 QQ | ZZ | GF(p) | ZZ/m
    vars  = x, y
    order = grevlex            optional: lex | grevlex
    f1    = x^2 - 1            the sequence / relations F (f1, f2, ...)
    f2    = y^2 - x
    u1    = y                  cofactors for ``rewrite`` (u1, u2, ...)
    h     = 2*y^2              target for ``rewrite``
    g1    = x                  ideal generators for ``grade`` (defaults to F)
    ideal = 2                  base-ring ideal, repeatable
    max_degree = 4             optional command parameters
    grade = 2

Indexed names are ordered by their numeric suffix.  Other names may be
declared freely and are kept, but no command uses them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .orders import GREVLEX, MonomialOrder, order_from_name
from .poly import MultiPoly, PolyRing
from .ring import BaseIdeal, BaseRing, RingError, ideal_normalize, parse_ring
from .syntax import ParseError, parse_poly

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")
_INDEXED = re.compile(r"([fug])(\d+)\Z")
_HEADER = ("ring", "vars", "order")
_PARAMS = ("max_degree", "grade")


class ProblemError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message, self.line, self.column = message, line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class ProblemSpec:
    ring: PolyRing
    polys: dict[str, MultiPoly] = field(default_factory=dict)
    ideals: list[BaseIdeal] = field(default_factory=list)
    order: MonomialOrder | None = None
    params: dict[str, int] = field(default_factory=dict)

    @property
    def base(self) -> BaseRing:
        return self.ring.base

    @property
    def monomial_order(self) -> MonomialOrder:
        return self.order or GREVLEX

    def _indexed(self, letter: str) -> list[MultiPoly]:
        found = []
        for name, f in self.polys.items():
            m = _INDEXED.match(name)
            if m and m.group(1) == letter:
                found.append((int(m.group(2)), f))
        return [f for _, f in sorted(found, key=lambda t: t[0])]

    @property
    def F(self) -> list[MultiPoly]:
        return self._indexed("f")

    @property
    def u(self) -> list[MultiPoly]:
        return self._indexed("u")

    @property
    def g(self) -> list[MultiPoly]:
        return self._indexed("g")

    @property
    def h(self) -> MultiPoly | None:
        return self.polys.get("h")

    def __eq__(self, other):
        if not isinstance(other, ProblemSpec):
            return NotImplemented
        return (self.ring == other.ring and self.polys == other.polys
                and [i.generator for i in self.ideals] == [i.generator for i in other.ideals]
                and self.order == other.order and self.params == other.params)

    def __str__(self):
        lines = [f"ring = {self.base}", f"vars = {', '.join(self.ring.variables)}"]
        if self.order is not None:
            lines.append(f"order = {self.order}")
        lines += [f"{k} = {v}" for k, v in self.params.items()]
        lines += [f"ideal = {self.base.fmt(i.generator)}" for i in self.ideals]
        lines += [f"{name} = {f}" for name, f in self.polys.items()]
        return "\n".join(lines) + "\n"


def _split(raw: str, lineno: int):
    if "=" not in raw:
        raise ProblemError("expected 'name = value'", lineno, 1)
    key, _, value = raw.partition("=")
    name = key.strip()
    if not _NAME.match(name):
        raise ProblemError(f"invalid name {name!r}", lineno, len(key) - len(key.lstrip()) + 1)
    col = len(key) + 2 + (len(value) - len(value.lstrip()))
    return name, value.strip(), col


def _int_param(value: str, lineno: int, col: int, minimum: int) -> int:
    try:
        n = int(value)
    except ValueError:
        raise ProblemError(f"expected an integer, got {value!r}", lineno, col) from None
    if n < minimum:
        raise ProblemError(f"value must be >= {minimum}", lineno, col)
    return n


def parse_problem(text: str) -> ProblemSpec:
    entries = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        raw = line.split("#", 1)[0]
        if not raw.strip():
            continue
        name, value, col = _split(raw, lineno)
        if name != "ideal" and name in seen:
            raise ProblemError(f"duplicate name {name!r} (first defined on line {seen[name]})", lineno, 1)
        seen[name] = lineno
        entries.append((lineno, name, value, col))
    header = {name: (lineno, value, col) for lineno, name, value, col in entries if name in _HEADER}
    if "ring" not in header:
        raise ProblemError("missing 'ring = ...' line")
    if "vars" not in header:
        raise ProblemError("missing 'vars = ...' line")
    lineno, value, col = header["ring"]
    try:
        base = parse_ring(value)
    except RingError as e:
        raise ProblemError(str(e), lineno, col) from None
    lineno, value, col = header["vars"]
    names = tuple(v.strip() for v in value.split(",")) if value.strip() else ()
    for v in names:
        if not _NAME.match(v):
            raise ProblemError(f"invalid variable name {v!r}", lineno, col)
    if len(set(names)) != len(names):
        raise ProblemError("repeated variable", lineno, col)
    if not names:
        raise ProblemError("at least one variable is required", lineno, col)
    ring = PolyRing(base, names)
    spec = ProblemSpec(ring)
    if "order" in header:
        lineno, value, col = header["order"]
        try:
            spec.order = order_from_name(value)
        except ValueError as e:
            raise ProblemError(str(e), lineno, col) from None
    for lineno, name, value, col in entries:
        if name in _HEADER:
            continue
        if name in _PARAMS:
            spec.params[name] = _int_param(value, lineno, col, 0 if name == "max_degree" else 1)
        elif name == "ideal":
            spec.ideals.append(parse_ideal(value, base, lineno, col))
        else:
            if name in names:
                raise ProblemError(f"{name!r} is a variable", lineno, 1)
            try:
                spec.polys[name] = parse_poly(value, ring)
            except ParseError as e:
                c = col + e.column - 1 if e.column is not None else col
                raise ProblemError(e.message, lineno, c) from None
            except RingError as e:
                raise ProblemError(str(e), lineno, col) from None
    return spec


def parse_ideal(value: str, base: BaseRing, lineno: int | None = None, col: int | None = None) -> BaseIdeal:
    """A base-ring ideal given by comma separated generators."""
    try:
        gens = [Fraction(x.strip()) for x in value.split(",")]
        return ideal_normalize(gens, base)
    except (ValueError, ZeroDivisionError, RingError):
        raise ProblemError(f"invalid ideal generator list {value!r}", lineno, col) from None
