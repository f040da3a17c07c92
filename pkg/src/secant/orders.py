"""Monomial orders on exponent tuples.

An order is represented by a sort key: ``order.key(exp)`` returns a tuple
such that larger keys mean larger monomials.  Variable order is the
declaration order of the ring (first variable is the largest).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``lex``, ``grevlex`` or ``block``.

    ``block`` is a product order: the variables are cut into consecutive
    blocks at ``splits`` and compared block by block (grevlex inside each
    block), so monomials in the leading block dominate.  Used with the
    ambient variables first and the fresh Kronecker variables last.
    """

    kind: str = "grevlex"
    splits: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, exp: tuple[int, ...]):
        if self.kind == "lex":
            return exp
        if self.kind == "grevlex":
            return _grevlex(exp)
        parts = []
        start = 0
        for stop in (*self.splits, len(exp)):
            parts.append(_grevlex(exp[start:stop]))
            start = stop
        return tuple(parts)

    def __str__(self):
        if self.kind == "block":
            return f"block{list(self.splits)}"
        return self.kind


def _grevlex(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(*splits: int) -> MonomialOrder:
    return MonomialOrder("block", tuple(splits))


def order_from_name(name: str) -> MonomialOrder:
    if name == "lex":
        return LEX
    if name == "grevlex":
        return GREVLEX
    raise ValueError(f"unknown monomial order {name!r} (expected lex or grevlex)")
