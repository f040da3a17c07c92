import random

import pytest

from corpus import zz_relation_instances
from secant.finite import NotDetectedFinite, finiteness_basis
from secant.flatness import (
    NotARelationModA,
    check_flatness_inclusion,
    certify_de_smit_lenstra,
    coefficients_in,
    intersection_generators,
    projective_structure,
    rewrite_by_membership,
    rewrite_with_ideal_coefficients,
)
from secant.linalg import det, matmul
from secant.poly import PolyRing
from secant.regseq import NotTriviallyGenerated
from secant.ring import QQ, ZZ, Zmod, ideal_normalize


def ideal(g, R):
    return ideal_normalize([g], R)


def test_rewrite_example(Zxy):
    F = [Zxy("x"), Zxy("y")]
    wit = rewrite_with_ideal_coefficients(Zxy("2*y^2"), [Zxy("y"), Zxy("-x + 2*y")], F, ideal(2, ZZ()))
    assert wit.v == [Zxy("0"), Zxy("2*y")]
    assert wit.w == [Zxy("y"), Zxy("-x")]
    assert wit.N.entries[0][1] != 0 and wit.M.is_antisymmetric()
    assert wit.verify()


def test_rewrite_unit_ideal_and_idempotence(Zxy):
    F = [Zxy("x"), Zxy("y")]
    u = [Zxy("y"), Zxy("-x + 2*y")]
    wit = rewrite_with_ideal_coefficients(Zxy("2*y^2"), u, F, ideal(1, ZZ()))
    assert wit.v == u and wit.M.is_zero()
    u = [Zxy("2*y"), Zxy("4*x")]
    h = Zxy("6*x*y")
    wit = rewrite_with_ideal_coefficients(h, u, F, ideal(2, ZZ()))
    assert wit.v == u and wit.M.is_zero() and wit.verify()
    again = rewrite_with_ideal_coefficients(h, wit.v, F, ideal(2, ZZ()))
    assert again.v == wit.v


def test_rewrite_errors(Zxy, Zx):
    F = [Zxy("x"), Zxy("y")]
    with pytest.raises(NotARelationModA):
        rewrite_with_ideal_coefficients(Zxy("x*y"), [Zxy("y"), Zxy("0")], F, ideal(2, ZZ()))
    with pytest.raises(ValueError):
        rewrite_with_ideal_coefficients(Zxy("x"), [Zxy("y"), Zxy("0")], F, ideal(2, ZZ()))
    F = [Zx("x"), Zx("x")]
    with pytest.raises(NotTriviallyGenerated):
        rewrite_with_ideal_coefficients(Zx("0"), [Zx("1"), Zx("-1")], F, ideal(2, ZZ()))
    wit = rewrite_by_membership(Zx("0"), [Zx("1"), Zx("-1")], F, ideal(2, ZZ()))
    assert wit is not None and wit.verify()


def test_random_zz_rewrites():
    for h, u, F, a in zz_relation_instances(30, seed=3):
        wit = rewrite_with_ideal_coefficients(h, u, F, ideal(a, ZZ()))
        assert wit.verify()
        assert all(coefficients_in(v, ideal(a, ZZ())) for v in wit.v)


def test_inclusion_examples(Zxy):
    F = [Zxy("x^2"), Zxy("x*y")]
    rep = check_flatness_inclusion(F, ideal(2, ZZ()), 3)
    assert rep.ok and rep.witnesses and all(w.verify() for w in rep.witnesses)
    assert rep.degree_bound == 3
    rep = check_flatness_inclusion([Zxy("1")], ideal(3, ZZ()), 2)
    assert rep.ok and all(w.verify() for w in rep.witnesses)
    assert check_flatness_inclusion(F, ideal(0, ZZ()), 3).ok
    with pytest.raises(ValueError):
        check_flatness_inclusion(F, ideal(2, ZZ()), -1)


def test_intersection_generators_lie_in_ideal(Zxy):
    F = [Zxy("x^2 + 3*y"), Zxy("x*y - 1")]
    for d in (2, 4, 6):
        gens = intersection_generators(F, ideal(d, ZZ()), 3)
        assert gens
        for h, u in gens:
            assert coefficients_in(h, ideal(d, ZZ()))
            assert sum((ui * f for ui, f in zip(u, F)), Zxy("0")) == h


def test_inclusion_on_random_combinations(Zxy):
    # random integer combinations with even coefficients must be rewritable
    F = [Zxy("x^2 - y"), Zxy("y^2 - 3*x")]
    a = ideal(2, ZZ())
    rng = random.Random(4)
    hits = 0
    for _ in range(200):
        u = [Zxy(f"{rng.randint(-2, 2)}*x + {rng.randint(-2, 2)}*y + {rng.randint(-2, 2)}") for _ in F]
        h = u[0] * F[0] + u[1] * F[1]
        if h.is_zero() or not coefficients_in(h, a):
            continue
        hits += 1
        assert rewrite_with_ideal_coefficients(h, u, F, a).verify()
    assert hits


def test_projective_examples(Zx):
    S = projective_structure(finiteness_basis([Zx("x^2 - 3*x")]))
    assert S.kind == "ZZ" and S.rank == 2
    assert S.U is None
    Qxy = PolyRing(QQ(), ("x", "y"))
    assert projective_structure(finiteness_basis([Qxy("x^2 - 1"), Qxy("y^2 - x")])).rank == 4
    R6 = PolyRing(Zmod(6), ("x",))
    S = projective_structure(finiteness_basis([R6("x^2 - x")]))
    assert S.rank == 2
    assert sorted((f.prime, f.rank) for f in S.factors) == [(2, 2), (3, 2)]


def test_certify_examples(Zx, Zxy):
    cert = certify_de_smit_lenstra([Zx("x^2 - 3*x")], [2, 3])
    assert cert.structure.rank == 2 and cert.completely_secant
    assert cert.lemma.sequence == [Zx("x^2 - 3*x")]
    assert len(cert.inclusions) == 2 and all(r.ok for r in cert.inclusions)
    Qxy = PolyRing(QQ(), ("x", "y"))
    cert = certify_de_smit_lenstra([Qxy("x^2 - 1"), Qxy("y^2 - x")])
    assert cert.structure.rank == 4
    assert cert.lemma.sequence == [Qxy("y^4 - 1"), Qxy("x^2 - 1")]
    with pytest.raises(NotDetectedFinite):
        certify_de_smit_lenstra([Zx("2*x - 2")])
    with pytest.raises(ValueError):
        certify_de_smit_lenstra([Zxy("x^2")])


def test_free_rank_is_degree_product():
    rng = random.Random(5)
    from corpus import monic_triangular
    for _ in range(10):
        _, F = monic_triangular(rng, ZZ(), 2, 3)
        cert = certify_de_smit_lenstra(F)
        expected = 1
        for i, f in enumerate(F):
            expected *= f.degree_in(i)
        S = cert.structure
        assert S.rank == expected
        if S.U is not None:
            assert matmul(matmul(S.U, S.presentation), S.V) == S.D
            assert abs(det(S.U)) == 1 and abs(det(S.V)) == 1


def test_unit_ideal_quotient(Zx):
    cert = certify_de_smit_lenstra([Zx("x^2 - 3*x")], [1])
    assert cert.quotients[0].relations[0].ring.base.is_zero_ring
    assert cert.inclusions[0].ok
