"""Regular sequences, Koszul relations and antisymmetric syzygy witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Submodule, SyzygyVector, groebner_basis, ideal_quotient, syzygies
from .orders import GREVLEX, MonomialOrder
from .poly import MultiPoly, PolyRing, is_monic_in


class NotTriviallyGenerated(ValueError):
    """A relation is not a combination of the Koszul relations."""

    def __init__(self, message: str, relation: SyzygyVector | None = None):
        super().__init__(message)
        self.relation = relation


# -- regular elements -----------------------------------------------------


@dataclass
class RegularityStep:
    """Evidence that ``element`` is a non-zero-divisor modulo ``ideal``.

    ``method`` is ``"monic"`` (element monic in ``variable``, which does not
    occur in ``ideal``) or ``"quotient"`` (the Gröbner bases of the ideal and
    of its quotient by the element agree).
    """

    element: MultiPoly
    ideal: list[MultiPoly]
    regular: bool
    method: str
    variable: str | None = None
    ideal_basis: list[MultiPoly] = field(default_factory=list)
    quotient_basis: list[MultiPoly] = field(default_factory=list)
    witness: MultiPoly | None = None

    def verify(self) -> bool:
        if self.method == "monic":
            return self.regular and monic_step_valid(self.element, self.ideal, self.variable)
        ring = self.element.ring
        I = groebner_basis(self.ideal, ring=ring, track=False) if self.ideal else None
        if I is not None and not all(I.contains(g) for g in self.ideal_basis):
            return False
        # recompute (I : a) and compare with the recorded basis
        fresh = ideal_quotient(self.ideal, self.element)
        Q = groebner_basis(self.quotient_basis, ring=ring, track=False) if self.quotient_basis else None
        if not all(Q is not None and Q.contains(g) for g in fresh.generators):
            return False
        if not all(fresh.contains(g) for g in self.quotient_basis):
            return False

        def in_ideal(g):
            return g.is_zero() or (I is not None and I.contains(g))

        if self.regular:
            return all(in_ideal(g) for g in self.quotient_basis)
        w = self.witness
        return w is not None and fresh.contains(w) and not in_ideal(w)


def monic_step_valid(a: MultiPoly, ideal: Sequence[MultiPoly], v: str | None) -> bool:
    if v is None or not is_monic_in(a, v):
        return False
    i = a.ring.index(v)
    return all(i not in g.variables_used() for g in ideal)


def find_monic_variable(a: MultiPoly, ideal: Sequence[MultiPoly]) -> str | None:
    """A variable in which a is monic and which no generator of ideal uses."""
    used = set()
    for g in ideal:
        used |= g.variables_used()
    for i in sorted(a.variables_used()):
        if i not in used and is_monic_in(a, i):
            return a.ring.variables[i]
    return None


def is_regular_element(a: MultiPoly, I: Sequence[MultiPoly] = (), order: MonomialOrder = GREVLEX,
                       structural: bool = True) -> RegularityStep:
    """Decide whether multiplication by a is injective on k[X]/I.

    A structural certificate is used when a is monic in a variable absent
    from I; otherwise (I : a) is computed and compared with I.  On failure
    the step carries a witness g not in I with g*a in I.
    """
    I = [g for g in I]
    if structural:
        v = find_monic_variable(a, I)
        if v is not None:
            return RegularityStep(a, I, True, "monic", variable=v)
    ring = a.ring
    Ib = groebner_basis(I, order, ring=ring, track=False) if I else None
    Q = ideal_quotient(I, a, order)
    witness = None
    for g in Q.generators:
        if Ib is None or not Ib.contains(g):
            witness = g if Ib is None else Ib.normal_form(g)[0]
            break
    return RegularityStep(
        a, I, witness is None, "quotient",
        ideal_basis=list(Ib.generators) if Ib else [],
        quotient_basis=list(Q.generators),
        witness=witness,
    )


# -- regular sequences ----------------------------------------------------


@dataclass
class RegularSequenceCertificate:
    """Outcome of a regular-sequence test.

    ``ok`` is True when every step is regular.  Otherwise ``failed_at`` is
    the 1-based index of the first element that is a zero divisor modulo
    the ambient ideal plus its predecessors, and ``witness`` the
    corresponding g with g*a in the ideal, g outside it.
    """

    sequence: list[MultiPoly]
    ambient: list[MultiPoly]
    steps: list[RegularityStep]
    failed_at: int | None = None

    @property
    def ok(self) -> bool:
        return self.failed_at is None

    def __bool__(self):
        return self.ok

    @property
    def witness(self) -> MultiPoly | None:
        return None if self.ok else self.steps[-1].witness

    def verify(self) -> bool:
        if self.ok and len(self.steps) != len(self.sequence):
            return False
        ideal = list(self.ambient)
        for i, step in enumerate(self.steps):
            if step.element != self.sequence[i] or list(step.ideal) != ideal:
                return False
            if not step.verify():
                return False
            ideal.append(self.sequence[i])
        return True


def is_regular_sequence(seq: Sequence[MultiPoly], I0: Sequence[MultiPoly] = (),
                        order: MonomialOrder = GREVLEX, structural: bool = True) -> RegularSequenceCertificate:
    """Test that each a_i is regular modulo I0 + <a_1, ..., a_{i-1}>.

    Sequences generating the unit ideal are accepted (every element of the
    zero ring is regular).
    """
    seq = list(seq)
    ideal = list(I0)
    steps = []
    for i, a in enumerate(seq):
        step = is_regular_element(a, ideal, order, structural=structural)
        steps.append(step)
        if not step.regular:
            return RegularSequenceCertificate(seq, list(I0), steps, failed_at=i + 1)
        ideal.append(a)
    return RegularSequenceCertificate(seq, list(I0), steps)


# -- Koszul relations -----------------------------------------------------


def koszul_relations(F: Sequence[MultiPoly], ring: PolyRing | None = None) -> list[SyzygyVector]:
    """The trivial relations f_j e_i - f_i e_j, i < j, in lexicographic pair order."""
    F = list(F)
    if not F:
        return []
    zero = F[0].ring.zero()
    out = []
    s = len(F)
    for i in range(s):
        for j in range(i + 1, s):
            v = [zero] * s
            v[i] = F[j]
            v[j] = -F[i]
            out.append(SyzygyVector(tuple(v)))
    return out


def _koszul_pairs(s: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(s) for j in range(i + 1, s)]


@dataclass
class UscReport:
    """Result of testing whether all relations are generated by the Koszul ones."""

    sequence: list[MultiPoly]
    relations: list[SyzygyVector]
    expressions: list[list[MultiPoly]]
    failing: SyzygyVector | None = None

    @property
    def ok(self) -> bool:
        return self.failing is None

    def __bool__(self):
        return self.ok


class KoszulModule:
    """The submodule generated by the Koszul relations of F, for repeated
    membership queries."""

    def __init__(self, F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX):
        self.F = list(F)
        self.ring = self.F[0].ring
        self.relations = koszul_relations(self.F)
        self.pairs = _koszul_pairs(len(self.F))
        self._sub = Submodule(self.relations, rank=len(self.F), ring=self.ring, order=order) if self.relations else None

    def express(self, u: Sequence[MultiPoly]) -> list[MultiPoly] | None:
        u = tuple(u)
        if self._sub is None:
            return [] if all(a.is_zero() for a in u) else None
        return self._sub.member(u)


def is_trivial_syzygy_generated(F: Sequence[MultiPoly], order: MonomialOrder = GREVLEX) -> UscReport:
    F = list(F)
    if not F:
        return UscReport([], [], [])
    rels = syzygies(F, order)
    K = KoszulModule(F, order)
    exprs = []
    for u in rels:
        c = K.express(u)
        if c is None:
            return UscReport(F, rels, exprs, failing=u)
        exprs.append(c)
    return UscReport(F, rels, exprs)


# -- antisymmetric witnesses ----------------------------------------------


@dataclass
class AntisymmetricWitness:
    """Square matrix with M^T == -M and zero diagonal."""

    entries: list[list[MultiPoly]]

    @property
    def size(self) -> int:
        return len(self.entries)

    def is_antisymmetric(self) -> bool:
        M = self.entries
        s = len(M)
        if any(len(row) != s for row in M):
            return False
        for i in range(s):
            if not M[i][i].is_zero():
                return False
            for j in range(i + 1, s):
                if not (M[i][j] + M[j][i]).is_zero():
                    return False
        return True

    def row_product(self, F: Sequence[MultiPoly]) -> list[MultiPoly]:
        """Row vector F * M."""
        s = self.size
        out = []
        for j in range(s):
            total = F[0].ring.zero()
            for i in range(s):
                if not self.entries[i][j].is_zero():
                    total = total + F[i] * self.entries[i][j]
            out.append(total)
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)


def antisymmetric_from_koszul(coeffs: Sequence[MultiPoly], s: int, ring: PolyRing) -> AntisymmetricWitness:
    """sum over pairs p < q of c_pq (E_qp - E_pq)."""
    M = [[ring.zero() for _ in range(s)] for _ in range(s)]
    for (p, q), c in zip(_koszul_pairs(s), coeffs):
        if c.is_zero():
            continue
        M[q][p] = M[q][p] + c
        M[p][q] = M[p][q] - c
    return AntisymmetricWitness(M)


def express_syzygy_antisymmetric(u: Sequence[MultiPoly], F: Sequence[MultiPoly],
                                 koszul: KoszulModule | None = None) -> AntisymmetricWitness:
    """Antisymmetric N with u == F * N (row vectors), from an expression of u
    in the Koszul relations.  Raises NotTriviallyGenerated otherwise."""
    F = list(F)
    u = tuple(u)
    if len(u) != len(F):
        raise ValueError("relation and sequence lengths differ")
    ring = F[0].ring
    if not SyzygyVector(u).evaluate(F).is_zero():
        raise ValueError("u is not a relation of F")
    s = len(F)
    if all(a.is_zero() for a in u):
        return AntisymmetricWitness([[ring.zero()] * s for _ in range(s)])
    K = koszul or KoszulModule(F)
    coeffs = K.express(u)
    if coeffs is None:
        raise NotTriviallyGenerated("relation is not generated by the Koszul relations", SyzygyVector(u))
    return antisymmetric_from_koszul(coeffs, s, ring)
