"""Kronecker sequences, the true-grade test Gr(a) >= k and completely
secant sequences.

A Kronecker sequence of length m attached to a = <a_1, ..., a_r> is built
from m disjoint blocks of r fresh variables; the j-th form is
sum_i a_i * Y_{j,i} (``shape="linear"``), so its coefficients with respect to
the fresh block are exactly the generators of a.  The alternative
``shape="quadratic"`` squares every fresh variable but the first; it has the
same content and is used to check that the verdict does not depend on the
chosen sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groebner import groebner_basis, ideal_member
from .orders import GREVLEX, MonomialOrder
from .poly import MultiPoly, PolyRing, extend_ring, fresh_prefix
from .regseq import RegularSequenceCertificate, is_regular_sequence

_PREFIXES = "UVWTSRQP"

CONTENT_READING = (
    "forms use the ideal generators as coefficients of fresh variables, so the "
    "content of each form (ideal of A generated by its coefficients) is the ideal"
)


@dataclass
class KroneckerSequence:
    ring: PolyRing            # ambient ring extended by all fresh blocks
    ideal: list[MultiPoly]    # generators, embedded in ``ring``
    blocks: list[list[str]]
    forms: list[MultiPoly]
    shape: str = "linear"

    @property
    def length(self) -> int:
        return len(self.forms)

    def form_coefficients(self, j: int) -> list[MultiPoly]:
        """Coefficients of the j-th form with respect to its fresh block,
        as polynomials of the ambient variables."""
        f = self.forms[j]
        block = {self.ring.index(v) for v in self.blocks[j]}
        coeffs: dict = {}
        for exp, c in f.terms.items():
            mono = tuple(e if i in block else 0 for i, e in enumerate(exp))
            rest = tuple(0 if i in block else e for i, e in enumerate(exp))
            coeffs.setdefault(mono, {})[rest] = c
        return [MultiPoly(self.ring, d) for _, d in sorted(coeffs.items())]

    def content_matches(self, j: int) -> bool:
        """The coefficients of form j generate the attached ideal."""
        coeffs = [c for c in self.form_coefficients(j) if not c.is_zero()]
        gens = [g for g in self.ideal if not g.is_zero()]
        if not coeffs or not gens:
            return not coeffs and not gens
        G1 = groebner_basis(coeffs, track=False)
        G2 = groebner_basis(gens, track=False)
        return all(G1.contains(g) for g in gens) and all(G2.contains(c) for c in coeffs)


def kronecker_sequence(gens: Sequence[MultiPoly], m: int, shape: str = "linear",
                       ring: PolyRing | None = None) -> KroneckerSequence:
    """m forms over pairwise disjoint fresh variable blocks, each with
    content equal to <gens>."""
    if m < 1:
        raise ValueError("Kronecker sequence length must be >= 1")
    if shape not in ("linear", "quadratic"):
        raise ValueError(f"unknown form shape {shape!r}")
    gens = list(gens)
    base_ring = ring or (gens[0].ring if gens else None)
    if base_ring is None:
        raise ValueError("ring required for an empty generator list")
    r = max(len(gens), 1)
    R = base_ring
    blocks = []
    for j in range(m):
        want = _PREFIXES[j] if j < len(_PREFIXES) else f"Y{j + 1}_"
        prefix = fresh_prefix(R, want)
        R2 = extend_ring(R, r, prefix)
        blocks.append(list(R2.variables[R.nvars:]))
        R = R2
    ideal = [R.embed(g) for g in gens] or [R.zero()]
    forms = []
    for block in blocks:
        f = R.zero()
        for i, (a, v) in enumerate(zip(ideal, block)):
            y = R.var(v)
            if shape == "quadratic" and i > 0:
                y = y * y
            f = f + a * y
        forms.append(f)
    return KroneckerSequence(R, ideal, blocks, forms, shape)


@dataclass
class GradeCertificate:
    ideal: list[MultiPoly]
    bound: int
    kronecker: KroneckerSequence
    evidence: RegularSequenceCertificate
    reading: str = CONTENT_READING

    @property
    def ok(self) -> bool:
        return self.evidence.ok

    def __bool__(self):
        return self.ok

    @property
    def witness(self) -> MultiPoly | None:
        return self.evidence.witness

    def verify(self) -> bool:
        k = self.kronecker
        if k.length != self.bound or self.evidence.sequence != k.forms:
            return False
        if not all(k.content_matches(j) for j in range(k.length)):
            return False
        return self.evidence.verify()


def grade_at_least(gens: Sequence[MultiPoly], k: int, shape: str = "linear",
                   order: MonomialOrder = GREVLEX, ring: PolyRing | None = None) -> GradeCertificate:
    """Decide Gr(<gens>) >= k by testing a length-k Kronecker sequence for
    regularity in the extended ring."""
    if k < 1:
        raise ValueError("grade bound must be >= 1")
    kron = kronecker_sequence(gens, k, shape, ring=ring)
    evidence = is_regular_sequence(kron.forms, (), order)
    return GradeCertificate(list(gens), k, kron, evidence)


@dataclass
class SecantReport:
    sequence: list[MultiPoly]
    ok: bool
    method: str                       # "regular-subsequence" or "kronecker"
    grade: GradeCertificate | None = None
    regular_sequence: RegularSequenceCertificate | None = None
    memberships: list[list[MultiPoly]] | None = None

    def __bool__(self):
        return self.ok


def is_completely_secant(seq: Sequence[MultiPoly], known_regular: Sequence[MultiPoly] | None = None,
                         order: MonomialOrder = GREVLEX) -> SecantReport:
    """Gr(<seq>) >= len(seq).

    When ``known_regular`` is given (a sequence of the same length lying in
    <seq>), its regularity and membership are checked and the Kronecker
    computation is skipped; if that check fails the Kronecker route is used.
    """
    seq = list(seq)
    n = len(seq)
    if n == 0:
        return SecantReport(seq, True, "empty")
    if known_regular is not None and len(known_regular) >= n:
        members = [ideal_member(g, seq, order) for g in known_regular]
        if all(c is not None for c in members):
            cert = is_regular_sequence(known_regular, (), order)
            if cert.ok:
                return SecantReport(seq, True, "regular-subsequence", regular_sequence=cert, memberships=members)
    g = grade_at_least(seq, n, order=order)
    return SecantReport(seq, g.ok, "kronecker", grade=g)
