"""Finite k-algebras k[X]/<F>: module bases, multiplication matrices, monic
annihilators by Cayley-Hamilton, the regular sequence of monic univariate
annihilators, and the Jacobian criterion over fields.

Finiteness is *detected*, not decided, over ZZ and ZZ/m: the strong Gröbner
basis must contain, for every variable, an element with unit leading
coefficient whose leading monomial is a pure power of that variable.  The
unit-leading-coefficient part of the basis (or, when that part is not a
Gröbner basis by itself, one monic pure power per variable) spans a free
k-module on its standard monomials, and the remaining basis elements give
the k-linear relations of A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from ._engine import Elem, _lcm, _sub_exp, axpy
from .groebner import GroebnerBasis, groebner_basis
from .linalg import charpoly, det as matrix_det, eval_matrix_poly, solve_field
from .orders import GREVLEX, MonomialOrder
from .poly import MultiPoly, PolyRing, is_monic_in
from .regseq import RegularSequenceCertificate, is_regular_sequence


class NotDetectedFinite(Exception):
    """Finiteness over k could not be detected (this does not prove A infinite)."""

    def __init__(self, message: str, variable: str | None = None):
        super().__init__(message)
        self.variable = variable


class UnsupportedBase(ValueError):
    pass


@dataclass
class FiniteAlgebraPresentation:
    """A = k[X]/<F> presented as a k-module.

    ``generators`` are the standard monomials (exponent tuples, ascending);
    ``matrices[i][r][c]`` is the coefficient of generator r in x_i times
    generator c; ``closure[i][c]`` are cofactors q with
    x_i*g_c - sum_r M[r][c]*g_r == sum_j q_j f_j.  ``relations`` are the
    columns of the k-module presentation matrix (coordinate vectors of
    elements of <F>) and ``relation_cofactors`` express each of them in F.
    """

    ring: PolyRing
    relations_F: list[MultiPoly]
    order: MonomialOrder
    generators: list[tuple[int, ...]]
    matrices: list[list[list]]
    closure: list[list[list[MultiPoly]]]
    relations: list[list] = field(default_factory=list)
    relation_cofactors: list[list[MultiPoly]] = field(default_factory=list)
    basis: GroebnerBasis | None = None

    @property
    def rank(self) -> int:
        return len(self.generators)

    def generator_polys(self) -> list[MultiPoly]:
        return [self.ring.monomial(e) for e in self.generators]

    def element(self, coords: Sequence) -> MultiPoly:
        out = self.ring.zero()
        for c, g in zip(coords, self.generator_polys()):
            if c != 0:
                out = out + g.scale(c)
        return out

    def verify_closure(self) -> bool:
        """Re-check every closure identity by polynomial arithmetic."""
        gens = self.generator_polys()
        for i in range(self.ring.nvars):
            xi = self.ring.var(i)
            M = self.matrices[i]
            for c, g in enumerate(gens):
                lhs = xi * g - self.element([M[r][c] for r in range(len(gens))])
                rhs = self.ring.zero()
                for q, f in zip(self.closure[i][c], self.relations_F):
                    rhs = rhs + q * f
                if lhs != rhs:
                    return False
        return True

    def verify_relations(self) -> bool:
        for col, cof in zip(self.relations, self.relation_cofactors):
            rhs = self.ring.zero()
            for q, f in zip(cof, self.relations_F):
                rhs = rhs + q * f
            if self.element(col) != rhs:
                return False
        return True


def _pure_power_var(exp) -> int | None:
    """Index i if exp is a power of x_i (or 1, returned as -1)."""
    nz = [i for i, e in enumerate(exp) if e]
    if not nz:
        return -1
    return nz[0] if len(nz) == 1 else None


def _is_groebner_alone(eng, elems: list[Elem]) -> bool:
    """Buchberger criterion for a set of unit-leading-coefficient elements."""
    R = eng.R
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            gi, gj = elems[i], elems[j]
            L = _lcm(gi.lt[1], gj.lt[1])
            vec: dict = {}
            axpy(R, vec, gi.vec, _sub_exp(L, gi.lt[1]), R.inverse(gi.lc))
            axpy(R, vec, gj.vec, _sub_exp(L, gj.lt[1]), R.neg(R.inverse(gj.lc)))
            if vec and eng.reduce(vec, elems)[0]:
                return False
    return True


def finiteness_basis(F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX,
                     ring: PolyRing | None = None) -> FiniteAlgebraPresentation:
    F = list(F)
    ring = ring or F[0].ring
    R = ring.base
    n = ring.nvars
    if R.is_zero_ring:
        empty = [[] for _ in range(n)]
        return FiniteAlgebraPresentation(ring, F, order, [], empty, [[] for _ in range(n)])
    G = groebner_basis(F, order, ring=ring)
    eng = G._engine
    monic_idx = [k for k, e in enumerate(eng.elems) if R.is_unit(e.lc)]
    monic = [eng.elems[k] for k in monic_idx]
    bounds = [None] * n
    for e in monic:
        v = _pure_power_var(e.lt[1])
        if v == -1:
            bounds = [0] * n
            break
        if v is not None:
            d = e.lt[1][v]
            bounds[v] = d if bounds[v] is None else min(bounds[v], d)
    for i, b in enumerate(bounds):
        if b is None:
            raise NotDetectedFinite(
                f"no basis element with unit leading coefficient and leading monomial a power of "
                f"{ring.variables[i]}", ring.variables[i])
    if not _is_groebner_alone(eng, monic):
        # one monic pure power per variable: coprime leading monomials, so
        # these alone are a Gröbner basis and span a free module on the box
        # of exponents; everything else becomes a relation
        pure = {}
        for k in monic_idx:
            v = _pure_power_var(eng.elems[k].lt[1])
            if v is not None and v >= 0 and eng.elems[k].lt[1][v] == bounds[v]:
                pure.setdefault(v, k)
        monic_idx = [pure[v] for v in range(n)]
        monic = [eng.elems[k] for k in monic_idx]
    in_monic = set(monic_idx)
    lms = [e.lt[1] for e in monic]
    std = [exp for exp in product(*(range(b) for b in bounds))
           if not any(all(a <= b for a, b in zip(lm, exp)) for lm in lms)]
    std.sort(key=order.key)
    index = {e: k for k, e in enumerate(std)}
    N = len(std)

    def reduce_monic(vec: dict, base_rep: list[MultiPoly]):
        """Coordinates of vec modulo the monic part, and cofactors in F of
        vec - (coordinates as polynomial), given base_rep expressing vec."""
        rem, cof = eng.reduce(vec, monic)
        coords = [R.zero()] * N
        for (_, e), c in rem.items():
            coords[index[e]] = c
        out = list(base_rep)
        for k, d in cof.items():
            q = MultiPoly(ring, dict(d), _trusted=True)
            for j, t in enumerate(G.transform[monic_idx[k]]):
                if not t.is_zero():
                    out[j] = out[j] + q * t
        return coords, out

    zeros = [ring.zero() for _ in F]
    matrices, closure = [], []
    for i in range(n):
        shift = tuple(1 if j == i else 0 for j in range(n))
        M = [[R.zero()] * N for _ in range(N)]
        cl = []
        for c, exp in enumerate(std):
            target = tuple(a + b for a, b in zip(exp, shift))
            coords, cof = reduce_monic({(0, target): R.one()}, zeros)
            for r in range(N):
                M[r][c] = coords[r]
            cl.append(cof)
        matrices.append(M)
        closure.append(cl)

    relations, rel_cof = [], []
    for k, e in enumerate(eng.elems):
        if k in in_monic:
            continue
        for exp in std:
            vec: dict = {}
            axpy(R, vec, e.vec, exp, R.one())
            mono = ring.monomial(exp)
            base = [mono * t for t in G.transform[k]]
            # vec - coords = sum cof * monic, so coords = b*g - (that)
            coords, cof = reduce_monic(vec, [ring.zero() for _ in F])
            if all(c == 0 for c in coords):
                continue
            relations.append(coords)
            rel_cof.append([b - q for b, q in zip(base, cof)])
    return FiniteAlgebraPresentation(ring, F, order, std, matrices, closure, relations, rel_cof, G)


def multiplication_matrix(i: int | str, P: FiniteAlgebraPresentation) -> list[list]:
    return P.matrices[P.ring.index(i)]


def element_matrix(h: MultiPoly, P: FiniteAlgebraPresentation) -> list[list]:
    """Matrix of multiplication by h on the module generators (generic
    version of multiplication_matrix, obtained by evaluating h at the
    commuting matrices M_i)."""
    R = P.ring.base
    N = P.rank
    total = [[R.zero()] * N for _ in range(N)]
    for exp, c in h.terms.items():
        term = [[R.one() if a == b else R.zero() for b in range(N)] for a in range(N)]
        for i, e in enumerate(exp):
            for _ in range(e):
                term = [[R.reduce(sum(term[a][k] * P.matrices[i][k][b] for k in range(N)))
                         for b in range(N)] for a in range(N)]
        for a in range(N):
            for b in range(N):
                total[a][b] = R.add(total[a][b], R.mul(c, term[a][b]))
    return total


@dataclass
class AnnihilatorWitness:
    """A monic polynomial in the single variable x_i lying in <F>, with
    cofactors: chi(X_i) == sum_j cofactors[j] * F[j]."""

    variable: int
    polynomial: MultiPoly
    cofactors: list[MultiPoly]
    relations: list[MultiPoly]

    def verify(self) -> bool:
        chi = self.polynomial
        if chi.variables_used() - {self.variable}:
            return False
        if not is_monic_in(chi, self.variable):
            return False
        total = chi.ring.zero()
        for q, f in zip(self.cofactors, self.relations):
            total = total + q * f
        return total == chi


def _univariate(ring: PolyRing, i: int, coeffs_high_first: Sequence) -> MultiPoly:
    n = len(coeffs_high_first) - 1
    terms = {}
    for k, c in enumerate(coeffs_high_first):
        exp = tuple(n - k if j == i else 0 for j in range(ring.nvars))
        terms[exp] = c
    return MultiPoly(ring, terms)


def _univariate_monic_relation(i: int, P: FiniteAlgebraPresentation):
    """Lowest-degree element of F (then of the Gröbner basis) that is a
    monic polynomial in x_i alone, with its cofactors in F."""
    ring = P.ring
    F = P.relations_F
    candidates = []
    for j, f in enumerate(F):
        if f.variables_used() == {i} and is_monic_in(f, i):
            cof = [ring.one() if k == j else ring.zero() for k in range(len(F))]
            candidates.append((f.degree_in(i), 0, j, f, cof))
    if P.basis is not None:
        for k, g in enumerate(P.basis.generators):
            if g.variables_used() == {i} and is_monic_in(g, i):
                candidates.append((g.degree_in(i), 1, k, g, list(P.basis.transform[k])))
    if not candidates:
        return None
    _, _, _, f, cof = min(candidates, key=lambda c: c[:3])
    R = ring.base
    u = R.inverse(f.coeff_in(i, f.degree_in(i)).constant_coeff())
    return f.scale(u), [q.scale(u) for q in cof]


def monic_annihilator(i: int | str, P: FiniteAlgebraPresentation, use_relations: bool = True) -> AnnihilatorWitness:
    """A monic polynomial chi(X_i) in <F>, with membership cofactors.

    A univariate monic relation already present in F (or in its Gröbner
    basis) is used when one exists; otherwise chi is the characteristic
    polynomial of the multiplication matrix of x_i, which annihilates x_i
    by Cayley-Hamilton over any commutative ring.  Either way chi(M_i) == 0.
    """
    ring = P.ring
    R = ring.base
    i = ring.index(i)
    if R.is_zero_ring:
        return AnnihilatorWitness(i, ring.one(), [ring.zero() for _ in P.relations_F], list(P.relations_F))
    if use_relations:
        found = _univariate_monic_relation(i, P)
        if found is not None and cayley_hamilton_holds(i, P, found[0]):
            return AnnihilatorWitness(i, found[0], found[1], list(P.relations_F))
    coeffs = charpoly(P.matrices[i], R.one(), R.zero(), R.reduce)
    chi = _univariate(ring, i, coeffs)
    cof = P.basis.express(chi) if P.basis is not None else None
    if cof is None:
        raise AssertionError("characteristic polynomial is not in the ideal: broken presentation")
    return AnnihilatorWitness(i, chi, cof, list(P.relations_F))


def cayley_hamilton_holds(i: int, P: FiniteAlgebraPresentation, chi: MultiPoly) -> bool:
    """chi(M_i) == 0 as an exact matrix identity."""
    R = P.ring.base
    d = chi.degree_in(i)
    if P.rank == 0:
        return True
    coeffs = [chi.coeff_in(i, d - k).constant_coeff() for k in range(d + 1)]
    Z = eval_matrix_poly(coeffs, P.matrices[i], R)
    return all(x == 0 for row in Z for x in row)


@dataclass
class AnnihilatorSequence:
    presentation: FiniteAlgebraPresentation
    witnesses: list[AnnihilatorWitness]       # ordered x_n, ..., x_1
    certificate: RegularSequenceCertificate

    @property
    def sequence(self) -> list[MultiPoly]:
        return [w.polynomial for w in self.witnesses]


def regular_sequence_from_finiteness(F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX,
                                     presentation: FiniteAlgebraPresentation | None = None) -> AnnihilatorSequence:
    """The sequence (chi_n(X_n), ..., chi_1(X_1)) of monic annihilators; each
    element is monic in a variable none of its predecessors use, so the
    regularity certificate is structural."""
    P = presentation or finiteness_basis(F, order)
    n = P.ring.nvars
    if n < 1:
        raise ValueError("need at least one variable")
    witnesses = [monic_annihilator(i, P) for i in reversed(range(n))]
    cert = is_regular_sequence([w.polynomial for w in witnesses], (), order, structural=True)
    return AnnihilatorSequence(P, witnesses, cert)


# -- Jacobian criterion -----------------------------------------------------


@dataclass
class JacobianReport:
    ok: bool
    jacobian: list[list[MultiPoly]]
    determinant: MultiPoly
    inverse: MultiPoly | None = None
    inverse_cofactors: list[MultiPoly] | None = None
    reason: str = ""
    lemma: AnnihilatorSequence | None = None

    def __bool__(self):
        return self.ok


def jacobian_matrix(F: Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    ring = F[0].ring
    return [[f.diff(v) for v in range(ring.nvars)] for f in F]


def jacobian_criterion(F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> JacobianReport:
    """Invertibility of det(dF_i/dX_j) in A = k[X]/<F>, k a field.  When it
    holds, A is finite and the annihilator sequence makes F completely secant."""
    F = list(F)
    ring = F[0].ring
    if not ring.base.is_field:
        raise UnsupportedBase(f"Jacobian criterion needs a field, got {ring.base}")
    if len(F) != ring.nvars:
        raise ValueError("need as many relations as variables")
    J = jacobian_matrix(F)
    D = matrix_det(J, ring.one(), ring.zero())
    try:
        P = finiteness_basis(F, order)
    except NotDetectedFinite as exc:
        return JacobianReport(False, J, D, reason=f"algebra not finite: {exc}")
    R = ring.base
    if P.rank == 0:
        return JacobianReport(True, J, D, ring.zero(), [ring.zero() for _ in F], "zero algebra",
                              regular_sequence_from_finiteness(F, order, P))
    Mdet = element_matrix(D, P)
    one = [R.one()] + [R.zero()] * (P.rank - 1)
    x = solve_field(Mdet, one, R)
    if x is None:
        return JacobianReport(False, J, D, reason="determinant of the Jacobian is not a unit in A")
    inv = P.element(x)
    cof = P.basis.express(D * inv - ring.one())
    if cof is None:
        raise AssertionError("computed inverse does not invert the Jacobian determinant")
    return JacobianReport(True, J, D, inv, cof, "determinant invertible",
                          regular_sequence_from_finiteness(F, order, P))
