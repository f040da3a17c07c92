"""Gröbner bases, normal forms with cofactors, syzygies, submodule membership
and ideal quotients over QQ, GF(p), ZZ and ZZ/m."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ._engine import Engine, paxpy
from .orders import GREVLEX, MonomialOrder
from .poly import MultiPoly, PolyError, PolyRing


def _common_ring(polys: Sequence[MultiPoly], ring: PolyRing | None = None) -> PolyRing:
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise PolyError(f"ring mismatch: {ring} vs {f.ring}")
    if ring is None:
        raise PolyError("cannot infer the ring of an empty list; pass ring=")
    return ring


def _as_vec(f: MultiPoly, pos: int = 0) -> dict:
    return {(pos, e): c for e, c in f.terms.items()}


def _poly(ring: PolyRing, d: dict) -> MultiPoly:
    return MultiPoly(ring, dict(d), _trusted=True)


@dataclass(frozen=True)
class SyzygyVector:
    """Vector of polynomials; a relation when sum(u_i * f_i) == 0."""

    coordinates: tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))

    def __len__(self):
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def __add__(self, other):
        return SyzygyVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return SyzygyVector(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return SyzygyVector(tuple(-a for a in self))

    def scale(self, g: MultiPoly) -> SyzygyVector:
        return SyzygyVector(tuple(g * a for a in self))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self)

    def evaluate(self, F: Sequence[MultiPoly]) -> MultiPoly:
        """sum_i u_i * f_i."""
        if len(F) != len(self):
            raise PolyError("length mismatch")
        total = F[0].ring.zero() if F else None
        for u, f in zip(self, F):
            total = total + u * f
        return total

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self) + ")"


@dataclass
class GroebnerBasis:
    """Reduced (strong) Gröbner basis with its transform matrix:
    ``generators[k] == sum_i transform[k][i] * inputs[i]``."""

    ring: PolyRing
    order: MonomialOrder
    inputs: list[MultiPoly]
    generators: list[MultiPoly]
    transform: list[list[MultiPoly]]
    _engine: Engine

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def normal_form(self, h: MultiPoly) -> tuple[MultiPoly, list[MultiPoly]]:
        if h.ring != self.ring:
            raise PolyError(f"ring mismatch: {h.ring} vs {self.ring}")
        rem, cof = self._engine.reduce(_as_vec(h))
        cofactors = [self.ring.zero() for _ in self.generators]
        for k, d in cof.items():
            cofactors[k] = _poly(self.ring, d)
        return _poly(self.ring, {e: c for (_, e), c in rem.items()}), cofactors

    def contains(self, h: MultiPoly) -> bool:
        return self.normal_form(h)[0].is_zero()

    def express(self, h: MultiPoly) -> list[MultiPoly] | None:
        """Cofactors g with h == sum g_i * inputs_i, or None if h not in the ideal."""
        rem, cof = self.normal_form(h)
        if not rem.is_zero():
            return None
        out = [self.ring.zero() for _ in self.inputs]
        for c, row in zip(cof, self.transform):
            if c.is_zero():
                continue
            for i, t in enumerate(row):
                if not t.is_zero():
                    out[i] = out[i] + c * t
        return out

    def is_unit_ideal(self) -> bool:
        return self.contains(self.ring.one())

    def leading_exps(self) -> list[tuple[int, ...]]:
        return [e.lt[1] for e in self._engine.elems]

    def leading_coeffs(self) -> list:
        return [e.lc for e in self._engine.elems]

    def audit(self) -> bool:
        """Re-check that every pair (and annihilator) polynomial reduces to
        zero and that the transform identity holds exactly."""
        try:
            self._engine.basis_syzygies(audit=True)
        except AssertionError:
            return False
        for g, row in zip(self.generators, self.transform):
            total = self.ring.zero()
            for t, f in zip(row, self.inputs):
                total = total + t * f
            if total != g:
                return False
        return True

    def input_syzygies(self) -> list[SyzygyVector]:
        s = len(self.inputs)
        out = []
        for vec in self._engine.input_syzygies():
            coords = [dict() for _ in range(s)]
            for (i, e), c in vec.items():
                coords[i][e] = c
            out.append(SyzygyVector(tuple(_poly(self.ring, d) for d in coords)))
        return out


def groebner_basis(F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX,
                   ring: PolyRing | None = None, track: bool = True) -> GroebnerBasis:
    ring = _common_ring(F, ring)
    eng = Engine(ring.base, ring.nvars, order, track=track)
    eng.compute([_as_vec(f) for f in F])
    gens = [_poly(ring, {e: c for (_, e), c in el.vec.items()}) for el in eng.elems]
    if track:
        transform = [[_poly(ring, d) for d in el.rep] for el in eng.elems]
    else:
        transform = []
    return GroebnerBasis(ring, order, list(F), gens, transform, eng)


def normal_form(h: MultiPoly, G: GroebnerBasis) -> tuple[MultiPoly, list[MultiPoly]]:
    """(remainder, cofactors) with h == sum cofactors_i * G_i + remainder."""
    return G.normal_form(h)


def ideal_member(h: MultiPoly, F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> list[MultiPoly] | None:
    """Cofactors g with h == sum g_j * F_j, or None when h is not in <F>."""
    if not F:
        return [] if h.is_zero() else None
    return groebner_basis(F, order, ring=h.ring).express(h)


def syzygies(F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX, ring: PolyRing | None = None) -> list[SyzygyVector]:
    """Generators of the module of relations sum u_i f_i == 0."""
    ring = _common_ring(F, ring)
    if not F:
        return []
    return groebner_basis(F, order, ring=ring).input_syzygies()


class Submodule:
    """Submodule of A^r generated by ``gens``, with a position-over-term
    Gröbner basis for membership tests."""

    def __init__(self, gens: Sequence[SyzygyVector], rank: int | None = None,
                 ring: PolyRing | None = None, order: MonomialOrder = GREVLEX):
        self.gens = [SyzygyVector(tuple(g)) for g in gens]
        if rank is None:
            if not self.gens:
                raise PolyError("rank required for an empty generating set")
            rank = len(self.gens[0])
        if ring is None:
            ring = _common_ring([a for g in self.gens for a in g])
        if any(len(g) != rank for g in self.gens):
            raise PolyError("generator arity mismatch")
        self.rank = rank
        self.ring = ring
        self._eng = Engine(ring.base, ring.nvars, order, pot=True)
        vecs = []
        for g in self.gens:
            v: dict = {}
            for pos, a in enumerate(g):
                v.update(_as_vec(a, pos))
            vecs.append(v)
        self._eng.compute(vecs, rank=rank)

    def member(self, v: Sequence[MultiPoly]) -> list[MultiPoly] | None:
        """Coefficients c with v == sum c_i * gens_i, or None."""
        v = tuple(v)
        if len(v) != self.rank:
            raise PolyError("vector arity mismatch")
        vec: dict = {}
        for pos, a in enumerate(v):
            vec.update(_as_vec(a, pos))
        rem, cof = self._eng.reduce(vec)
        if rem:
            return None
        coeffs = [dict() for _ in self.gens]
        R = self.ring.base
        for k, d in cof.items():
            rep = self._eng.elems[k].rep
            for exp, c in d.items():
                for i, rp in enumerate(rep):
                    if rp:

                        paxpy(R, coeffs[i], rp, exp, c)
        return [_poly(self.ring, d) for d in coeffs]


def module_member(v: SyzygyVector | Sequence[MultiPoly], gens: Sequence[SyzygyVector],
                  ring: PolyRing | None = None) -> list[MultiPoly] | None:
    v = tuple(v)
    if not gens:
        return [] if all(a.is_zero() for a in v) else None
    return Submodule(gens, rank=len(v), ring=ring).member(v)


def ideal_quotient(I: Sequence[MultiPoly], a: MultiPoly, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Gröbner basis of (I : a) = {g : g*a in I}, from the first coordinates
    of the syzygies of (a, I_1, ..., I_r)."""
    ring = a.ring
    syz = syzygies([a, *I], order, ring=ring)
    firsts = [u[0] for u in syz if not u[0].is_zero()]
    return groebner_basis(firsts, order, ring=ring)
