"""Flatness by trivial relations, and the de Smit-Lenstra certifier.

Rewriting: given h = sum u_i f_i with every coefficient of h in an ideal a of
k, reduce modulo a, express the reduced relation as F * N with N
antisymmetric, lift N to M over k and subtract w = F * M.  The new
cofactors v = u - w satisfy sum v_i f_i = h and have all coefficients in a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from .finite import (
    FiniteAlgebraPresentation,
    AnnihilatorSequence,
    NotDetectedFinite,
    finiteness_basis,
    regular_sequence_from_finiteness,
)
from .groebner import ideal_member
from .linalg import smith_local, smith_zz
from .orders import GREVLEX, MonomialOrder
from .poly import MultiPoly, PolyRing, lift_coefficients, reduce_coefficients
from .regseq import (
    AntisymmetricWitness,
    KoszulModule,
    NotTriviallyGenerated,
    express_syzygy_antisymmetric,
)
from .ring import BaseIdeal, factor_int, ideal_normalize

__all__ = [
    "NotARelationModA",
    "NonUnitDivisor",
    "NotDetectedFinite",
    "RewriteWitness",
    "rewrite_with_ideal_coefficients",
    "InclusionReport",
    "check_flatness_inclusion",
    "ModuleStructure",
    "projective_structure",
    "FlatnessCertificate",
    "certify_de_smit_lenstra",
]


class NotARelationModA(ValueError):
    """sum u_i f_i does not vanish modulo a (h has a coefficient outside a)."""


class NonUnitDivisor(ValueError):
    """A non-unit, nonzero elementary divisor: the module is not flat."""


def _dot(u: Sequence[MultiPoly], F: Sequence[MultiPoly], ring: PolyRing) -> MultiPoly:
    total = ring.zero()
    for a, f in zip(u, F):
        if not a.is_zero() and not f.is_zero():
            total = total + a * f
    return total


def coefficients_in(f: MultiPoly, a: BaseIdeal) -> bool:
    return reduce_coefficients(f, a).is_zero()


# -- rewriting ---------------------------------------------------------------


@dataclass
class RewriteWitness:
    """h = sum u_i f_i rewritten as sum v_i f_i with v_i in a[X].

    ``method`` is ``"antisymmetric"`` (w = F*M with M antisymmetric, the
    lift of N over k/a) or ``"membership"`` (v found directly from h/d in
    <F>; used when the reduced relation is not Koszul-generated).
    """

    ideal: BaseIdeal
    F: list[MultiPoly]
    h: MultiPoly
    u: list[MultiPoly]
    v: list[MultiPoly]
    w: list[MultiPoly]
    method: str = "antisymmetric"
    N: AntisymmetricWitness | None = None
    M: AntisymmetricWitness | None = None

    def verify(self) -> bool:
        ring = self.h.ring
        if _dot(self.v, self.F, ring) != self.h:
            return False
        if not all(coefficients_in(vi, self.ideal) for vi in self.v):
            return False
        if any(wi != ui - vi for wi, ui, vi in zip(self.w, self.u, self.v)):
            return False
        if not _dot(self.w, self.F, ring).is_zero():
            return False
        if self.method == "antisymmetric":
            if self.M is None or not self.M.is_antisymmetric():
                return False
            if self.M.row_product(self.F) != self.w:
                return False
        return True


def lift_antisymmetric(N: AntisymmetricWitness, ring: PolyRing) -> AntisymmetricWitness:
    """Lift the strictly lower triangle coefficientwise (canonical residues)
    and complete by antisymmetry, so that M^T == -M holds over k exactly."""
    s = N.size
    M = [[ring.zero() for _ in range(s)] for _ in range(s)]
    for i in range(s):
        for j in range(i):
            lifted = lift_coefficients(N.entries[i][j], ring)
            M[i][j] = lifted
            M[j][i] = -lifted
    return AntisymmetricWitness(M)


def rewrite_with_ideal_coefficients(h: MultiPoly, u: Sequence[MultiPoly], F: Sequence[MultiPoly],
                                    a: BaseIdeal, koszul: KoszulModule | None = None) -> RewriteWitness:
    """Rewrite h = sum u_i f_i with cofactors whose coefficients lie in a.

    Raises NotARelationModA when h has coefficients outside a, and
    NotTriviallyGenerated when the reduced relation is not a combination of
    the Koszul relations of F over k/a.  ``koszul`` may carry a precomputed
    Koszul module of the reduced sequence.
    """
    F = list(F)
    u = list(u)
    ring = h.ring
    if len(u) != len(F):
        raise ValueError("u and F have different lengths")
    if _dot(u, F, ring) != h:
        raise ValueError("h != sum u_i f_i")
    if not coefficients_in(h, a):
        raise NotARelationModA(f"h = {h} has coefficients outside {a}")
    ubar = [reduce_coefficients(x, a) for x in u]
    s = len(F)
    if all(x.is_zero() for x in ubar):
        zero = [[ring.zero()] * s for _ in range(s)]
        return RewriteWitness(a, F, h, u, list(u), [ring.zero()] * s, "antisymmetric",
                              None, AntisymmetricWitness(zero))
    Fbar = [reduce_coefficients(f, a) for f in F]
    N = express_syzygy_antisymmetric(ubar, Fbar, koszul)
    M = lift_antisymmetric(N, ring)
    w = M.row_product(F)
    v = [ui - wi for ui, wi in zip(u, w)]
    out = RewriteWitness(a, F, h, u, v, w, "antisymmetric", N, M)
    if not out.verify():
        raise AssertionError("rewrite produced an invalid witness")
    return out


def rewrite_by_membership(h: MultiPoly, u: Sequence[MultiPoly], F: Sequence[MultiPoly],
                          a: BaseIdeal) -> RewriteWitness | None:
    """Find v in a[X] with sum v_i f_i = h directly: h = d*h' and
    h' in <F> + ann(d), then v = d * (cofactors of h')."""
    ring = h.ring
    R = ring.base
    F = list(F)
    d = a.generator
    if R.is_field or d == 0 or R.is_unit(d):
        if R.is_field and d != 0:
            v = list(u)
        elif d == 0:
            if not h.is_zero():
                return None
            v = [ring.zero() for _ in F]
        else:
            v = list(u)
        w = [ui - vi for ui, vi in zip(u, v)]
        return RewriteWitness(a, F, h, list(u), v, w, "membership")
    if R.kind == "ZZ":
        hp = MultiPoly(ring, {e: c // d for e, c in h.terms.items()})
        cof = ideal_member(hp, F)
        if cof is None:
            return None
        v = [q.scale(d) for q in cof]
    else:
        g = math.gcd(d, R.modulus)
        hp = MultiPoly(ring, {e: c // g for e, c in h.terms.items()})
        extra = ring.constant(R.modulus // g)
        cof = ideal_member(hp, F + [extra])
        if cof is None:
            return None
        v = [q.scale(g) for q in cof[:len(F)]]
    w = [ui - vi for ui, vi in zip(u, v)]
    out = RewriteWitness(a, F, h, list(u), v, w, "membership")
    return out if out.verify() else None


# -- inclusion check ---------------------------------------------------------


def _monomials_up_to(nvars: int, bound: int) -> list[tuple[int, ...]]:
    if bound < 0:
        return []
    out = []
    for d in range(bound + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


@dataclass
class InclusionReport:
    """Bounded check of <F> ∩ a[X] ⊆ a f_1 + ... + a f_s."""

    ideal: BaseIdeal
    degree_bound: int
    witnesses: list[RewriteWitness] = field(default_factory=list)
    failure: MultiPoly | None = None
    failure_reason: str = ""

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __bool__(self):
        return self.ok


def intersection_generators(F: Sequence[MultiPoly], a: BaseIdeal, degree_bound: int):
    """Pairs (h, u) spanning, as a k-module, the elements of <F> ∩ a[X] that
    are k-combinations of m*f_i with deg(m*f_i) <= degree_bound.

    The lattice {c : c*B ≡ 0 mod d} (B the matrix of the products m*f_i) is
    read off a Smith form U*B*V = D over ZZ: its generators are the rows of
    U scaled by d / gcd(d, D_jj).
    """
    F = list(F)
    ring = F[0].ring
    R = ring.base
    n = ring.nvars
    rows = []  # (index of f, monomial)
    for i, f in enumerate(F):
        if f.is_zero() or f.degree() > degree_bound:
            continue
        for m in _monomials_up_to(n, degree_bound - f.degree()):
            rows.append((i, m))
    if not rows:
        return []
    d = a.generator
    if R.is_field:
        if d == 0:
            return []
        mult_rows = [[1 if r == k else 0 for r in range(len(rows))] for k in range(len(rows))]
        coeff_rows = mult_rows
    else:
        if R.kind == "ZZ":
            dd = abs(int(d))
        else:
            dd = math.gcd(int(d), R.modulus)
        cols = _monomials_up_to(n, degree_bound)
        cidx = {e: k for k, e in enumerate(cols)}
        B = [[0] * len(cols) for _ in rows]
        for r, (i, m) in enumerate(rows):
            for e, c in F[i].terms.items():
                B[r][cidx[tuple(x + y for x, y in zip(e, m))]] = int(c)
        U, V, D = smith_zz(B)
        coeff_rows = []
        for j in range(len(rows)):
            djj = D[j][j] if j < len(cols) else 0
            if dd == 0:
                if djj != 0:
                    continue
                k = 1
            else:
                k = dd // math.gcd(dd, djj)
            coeff_rows.append([k * x for x in U[j]])
    out = []
    for c in coeff_rows:
        u = [ring.zero() for _ in F]
        for coef, (i, m) in zip(c, rows):
            if coef:
                u[i] = u[i] + ring.monomial(m, coef)
        if all(x.is_zero() for x in u):
            continue
        out.append((_dot(u, F, ring), u))
    return out


def check_flatness_inclusion(F: Sequence[MultiPoly], a: BaseIdeal, degree_bound: int = 4) -> InclusionReport:
    """Verify, up to total degree ``degree_bound``, that every element of
    <F> ∩ a[X] can be rewritten with cofactors in a[X].  The antisymmetric
    rewrite is tried first; membership of h/d in <F> is the fallback."""
    F = list(F)
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    report = InclusionReport(a, degree_bound)
    if a.is_zero:
        return report
    koszul = None
    try:
        Fbar = [reduce_coefficients(f, a) for f in F]
        if not Fbar[0].ring.base.is_zero_ring:
            koszul = KoszulModule(Fbar)
    except ValueError:
        koszul = None
    for h, u in intersection_generators(F, a, degree_bound):
        try:
            wit = rewrite_with_ideal_coefficients(h, u, F, a, koszul)
        except NotTriviallyGenerated:
            wit = rewrite_by_membership(h, u, F, a)
        if wit is None:
            report.failure = h
            report.failure_reason = "no rewrite with cofactors in the ideal"
            return report
        report.witnesses.append(wit)
    return report


# -- projective structure ----------------------------------------------------


@dataclass
class LocalFactor:
    prime: int
    exponent: int
    rank: int
    U: list[list[int]]
    V: list[list[int]]
    D: list[list[int]]


@dataclass
class ModuleStructure:
    """Free / locally free structure of A as a k-module.

    ``kind`` is ``"field"``, ``"ZZ"`` or ``"ZZmod"``.  For ZZ the Smith
    form U*P*V = D of the presentation matrix P is recorded; for ZZ/m one
    local Smith form per prime power factor of m.
    """

    kind: str
    generators: int
    rank: int | None
    presentation: list[list] = field(default_factory=list)
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None
    D: list[list[int]] | None = None
    factors: list[LocalFactor] = field(default_factory=list)

    @property
    def is_free(self) -> bool:
        return self.rank is not None


def _presentation_matrix(P: FiniteAlgebraPresentation) -> list[list[int]]:
    N = P.rank
    return [[int(col[r]) for col in P.relations] for r in range(N)]


def projective_structure(P: FiniteAlgebraPresentation) -> ModuleStructure:
    R = P.ring.base
    N = P.rank
    if R.is_field:
        return ModuleStructure("field", N, N)
    pres = _presentation_matrix(P)
    if R.kind == "ZZ":
        if not P.relations:
            return ModuleStructure("ZZ", N, N, pres)
        U, V, D = smith_zz(pres)
        units = 0
        for j in range(min(N, len(P.relations))):
            d = D[j][j]
            if d in (1, -1):
                units += 1
            elif d != 0:
                raise NonUnitDivisor(f"elementary divisor {d}: A is not flat over ZZ")
        return ModuleStructure("ZZ", N, N - units, pres, U, V, D)
    factors = []
    for p, e in sorted(factor_int(R.modulus).items()):
        if P.relations:
            U, V, D = smith_local(pres, p, e)
        else:
            U, V, D = [], [], []
        units = 0
        for j in range(min(N, len(P.relations))):
            d = D[j][j]
            if d == 1:
                units += 1
            elif d != 0:
                raise NonUnitDivisor(f"elementary divisor {d} over ZZ/{p ** e}: A is not flat")
        factors.append(LocalFactor(p, e, N - units, U, V, D))
    ranks = {f.rank for f in factors}
    rank = ranks.pop() if len(ranks) == 1 else (0 if not factors else None)
    return ModuleStructure("ZZmod", N, rank, pres, factors=factors)


# -- de Smit-Lenstra -----------------------------------------------------------


@dataclass
class QuotientWitness:
    """The annihilator sequence recomputed over k/c for one ideal c."""

    ideal: BaseIdeal
    relations: list[MultiPoly]
    lemma: AnnihilatorSequence


@dataclass
class FlatnessCertificate:
    relations: list[MultiPoly]
    presentation: FiniteAlgebraPresentation
    lemma: AnnihilatorSequence
    structure: ModuleStructure
    quotients: list[QuotientWitness]
    inclusions: list[InclusionReport]
    degree_bound: int

    @property
    def ring(self) -> PolyRing:
        return self.presentation.ring

    @property
    def completely_secant(self) -> bool:
        return self.lemma.certificate.ok and len(self.lemma.sequence) == len(self.relations)

    def to_dict(self) -> dict:
        from .certificate import certificate_to_dict

        return certificate_to_dict(self)


def certify_de_smit_lenstra(F: Sequence[MultiPoly], ideals: Sequence[BaseIdeal | int] = (),
                            degree_bound: int = 3, order: MonomialOrder = GREVLEX) -> FlatnessCertificate:
    """Run the pipeline finite => completely secant => flat => projective.

    Raises NotDetectedFinite when the finiteness hypothesis cannot be
    established (the theorem does not apply; this is not a refutation of
    flatness).
    """
    F = list(F)
    if not F:
        raise ValueError("need at least one relation")
    ring = F[0].ring
    if len(F) != ring.nvars:
        raise ValueError(f"need as many relations as variables ({len(F)} != {ring.nvars})")
    R = ring.base
    ideals = [c if isinstance(c, BaseIdeal) else ideal_normalize([c], R) for c in ideals]
    P = finiteness_basis(F, order)
    lemma = regular_sequence_from_finiteness(F, order, P)
    quotients = []
    for c in ideals:
        Fbar = [reduce_coefficients(f, c) for f in F]
        Pbar = finiteness_basis(Fbar, order)
        quotients.append(QuotientWitness(c, Fbar, regular_sequence_from_finiteness(Fbar, order, Pbar)))
    structure = projective_structure(P)
    inclusions = [check_flatness_inclusion(F, c, degree_bound) for c in ideals]
    return FlatnessCertificate(F, P, lemma, structure, quotients, inclusions, degree_bound)
