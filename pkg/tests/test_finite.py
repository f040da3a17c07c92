import random

import pytest

from corpus import monic_triangular
from oracles import quotient_dimension_by_enumeration
from secant.finite import (
    NotDetectedFinite,
    UnsupportedBase,
    cayley_hamilton_holds,
    finiteness_basis,
    jacobian_criterion,
    monic_annihilator,
    multiplication_matrix,
    regular_sequence_from_finiteness,
)
from secant.linalg import matmul
from secant.orders import GREVLEX, LEX
from secant.poly import PolyRing
from secant.regseq import is_regular_sequence
from secant.ring import GF, QQ, ZZ, Zmod


def test_finiteness_examples(Qxy, Zx):
    P = finiteness_basis([Qxy("x^2 - 1"), Qxy("x*y - 1")])
    assert P.generator_polys() == [Qxy("1"), Qxy("y")]
    assert P.rank == 2
    with pytest.raises(NotDetectedFinite) as err:
        finiteness_basis([Qxy("x*y")])
    assert err.value.variable == "x"
    P = finiteness_basis([Zx("x^2 - 3*x")])
    assert P.generator_polys() == [Zx("1"), Zx("x")]
    with pytest.raises(NotDetectedFinite):
        finiteness_basis([Zx("2*x - 2")])


def test_multiplication_matrix_examples(Qx, Zx):
    P = finiteness_basis([Qx("x^2")])
    assert multiplication_matrix(0, P) == [[0, 0], [1, 0]]
    assert multiplication_matrix("x", P) == [[0, 0], [1, 0]]
    P = finiteness_basis([Zx("x^2 - 3*x")])
    assert multiplication_matrix(0, P) == [[0, 0], [1, 3]]
    assert P.verify_closure() and P.verify_relations()


def test_annihilator_examples(Qx, Zx):
    P = finiteness_basis([Qx("x^2")])
    for use in (True, False):
        w = monic_annihilator(0, P, use_relations=use)
        assert w.polynomial == Qx("x^2") and w.verify()
    w = monic_annihilator(0, finiteness_basis([Zx("x^2 - 3*x")]), use_relations=False)
    assert w.polynomial == Zx("x^2 - 3*x") and w.verify()
    w = monic_annihilator(0, finiteness_basis([Qx("x")]))
    assert w.polynomial == Qx("x") and w.verify()


def test_lemma_sequence_examples(Qxy, Zx, Qx):
    L = regular_sequence_from_finiteness([Qxy("x^2 - 1"), Qxy("y^2 - x")])
    assert L.sequence == [Qxy("y^4 - 1"), Qxy("x^2 - 1")]
    assert L.witnesses[0].cofactors == [Qxy("1"), Qxy("y^2 + x")]
    assert all(w.verify() for w in L.witnesses)
    assert L.certificate.ok and L.certificate.verify()
    L = regular_sequence_from_finiteness([Zx("x^2 - 3*x")])
    assert L.sequence == [Zx("x^2 - 3*x")] and L.witnesses[0].cofactors == [Zx("1")]
    L = regular_sequence_from_finiteness([Qx("x - 5")])
    assert L.sequence == [Qx("x - 5")] and L.witnesses[0].cofactors == [Qx("1")]


def test_jacobian_examples(Qx):
    r = jacobian_criterion([Qx("x^2 - 1")])
    assert r.ok and r.determinant == Qx("2*x") and r.inverse == Qx("1/2*x")
    r = jacobian_criterion([Qx("x^2")])
    assert not r.ok
    F2 = PolyRing(GF(2), ("x",))
    r = jacobian_criterion([F2("x^2 - 1")])
    assert not r.ok and r.determinant.is_zero()
    with pytest.raises(UnsupportedBase):
        jacobian_criterion([PolyRing(ZZ(), ("x",))("x^2 - 1")])


def _desk_instances():
    rng = random.Random(11)
    out = []
    for base in (QQ(), GF(5), ZZ(), Zmod(6)):
        for n in (1, 2):
            for _ in range(3):
                ring, seq = monic_triangular(rng, base, n, max_degree=2)
                out.append(seq)
    return out


@pytest.mark.parametrize("F", _desk_instances(), ids=str)
def test_presentation_invariants(F):
    P = finiteness_basis(F)
    assert P.verify_closure() and P.verify_relations()
    assert P.generators[0] == (0,) * P.ring.nvars
    R = P.ring.base
    mats = P.matrices
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            assert ([[R.reduce(x) for x in r] for r in matmul(mats[i], mats[j])]
                    == [[R.reduce(x) for x in r] for r in matmul(mats[j], mats[i])])
    for i in range(P.ring.nvars):
        for use in (True, False):
            w = monic_annihilator(i, P, use_relations=use)
            assert w.verify() and cayley_hamilton_holds(i, P, w.polynomial)
    L = regular_sequence_from_finiteness(F, presentation=P)
    assert L.certificate.ok
    if R.is_field:
        assert is_regular_sequence(L.sequence, structural=False).ok


@pytest.mark.parametrize("F", [f for f in _desk_instances() if f[0].ring.base.is_field], ids=str)
def test_dimension_order_invariant(F):
    assert finiteness_basis(F, GREVLEX).rank == finiteness_basis(F, LEX).rank


def test_dimension_matches_enumeration():
    R = PolyRing(GF(2), ("x", "y"))
    for F in ([R("x^2 + x"), R("y^2 + x*y + 1")], [R("x^2"), R("y^2")], [R("x^2 + 1"), R("x*y + 1"), R("y^2 + y")]):
        assert finiteness_basis(F).rank == quotient_dimension_by_enumeration(F, 2, 2, 7)


def test_box_presentation_when_monic_part_is_not_groebner(Zxy):
    # the strong basis contains 3*x*y - y^2 - 3*x + 1, so the staircase of
    # the unit part carries torsion in the associated graded; A is still free
    from secant.flatness import projective_structure
    F = [Zxy("x^2 - 1"), Zxy("x^3 - x^2 - 3*x*y + y^2 + 2*x")]
    P = finiteness_basis(F)
    assert P.relations and P.verify_closure() and P.verify_relations()
    assert projective_structure(P).rank == 4
    L = regular_sequence_from_finiteness(F, presentation=P)
    assert all(w.verify() for w in L.witnesses) and L.certificate.ok
