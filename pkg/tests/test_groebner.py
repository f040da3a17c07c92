import pytest

from oracles import member, syzygy_kernel, module_span, recode
from secant.groebner import (
    SyzygyVector,
    groebner_basis,
    ideal_member,
    ideal_quotient,
    module_member,
    normal_form,
    syzygies,
)
from secant.orders import GREVLEX, LEX
from secant.poly import PolyRing
from secant.ring import Zmod


def _same_ideal(G, gens):
    H = groebner_basis(gens)
    return all(G.contains(g) for g in gens) and all(H.contains(g) for g in G.generators)


def test_basis_example(Qxy):
    G = groebner_basis([Qxy("x^2 - 1"), Qxy("x*y - 1")])
    assert sorted(map(str, G.generators)) == ["x - y", "y^2 - 1"]
    assert G.audit()


def test_single_generator(Qxy):
    G = groebner_basis([Qxy("x")])
    assert G.generators == [Qxy("x")]


def test_strong_basis_over_zz(Zx):
    G = groebner_basis([Zx("2*x"), Zx("3*x")])
    assert G.generators == [Zx("x")]
    assert G.audit()


def test_transform_identity(Zxy):
    F = [Zxy("2*x*y + 3"), Zxy("4*y^2 - x"), Zxy("6*x")]
    G = groebner_basis(F)
    for g, row in zip(G.generators, G.transform):
        total = Zxy.zero()
        for t, f in zip(row, F):
            total = total + t * f
        assert total == g
    assert G.audit()


def test_normal_form_examples(Qxy):
    G = groebner_basis([Qxy("x - y"), Qxy("y^2 - 1")])
    r, _ = normal_form(Qxy("x^2"), G)
    assert r == Qxy.one()
    r, cof = normal_form(Qxy.zero(), G)
    assert r.is_zero() and all(c.is_zero() for c in cof)


def test_normal_form_cofactors(Qxy):
    G = groebner_basis([Qxy("x^2 - y"), Qxy("x*y - 1")])
    h = Qxy("x^3*y + 5*y^2 - x + 2")
    r, cof = normal_form(h, G)
    total = r
    for c, g in zip(cof, G.generators):
        total = total + c * g
    assert total == h


def test_member_examples(Qxy, Qx):
    cof = ideal_member(Qxy("x - y"), [Qxy("x^2 - 1"), Qxy("x*y - 1")])
    assert cof == [Qxy("y"), Qxy("-x")]
    assert ideal_member(Qx.one(), [Qx("x")]) is None
    f = Qxy("x^2*y + 3")
    assert ideal_member(f, [f]) == [Qxy.one()]


def test_syzygy_examples(Qxy, Qx):
    assert [list(v) for v in syzygies([Qxy("x"), Qxy("y")])] == [[Qxy("y"), Qxy("-x")]]
    assert syzygies([Qxy.one()]) == []
    rels = syzygies([Qx("x"), Qx("x")])
    assert any(list(v) in ([Qx("1"), Qx("-1")], [Qx("-1"), Qx("1")]) for v in rels)
    assert module_member([Qx("x"), Qx("-x")], rels) is not None


def test_syzygies_over_zz(Zx):
    rels = syzygies([Zx("2*x"), Zx("3*x")])
    assert [list(v) for v in rels] == [[Zx("3"), Zx("-2")]] or [list(v) for v in rels] == [[Zx("-3"), Zx("2")]]


def test_module_member_examples(Qxy):
    gen = SyzygyVector((Qxy("y"), Qxy("-x")))
    assert module_member(gen, [gen]) == [Qxy.one()]
    assert all(c.is_zero() for c in module_member([Qxy.zero(), Qxy.zero()], [gen]))
    assert module_member([Qxy("x*y"), Qxy("-x^2")], [gen]) == [Qxy("x")]
    assert module_member([Qxy("1"), Qxy("0")], [gen]) is None


def test_quotient_examples(Qx, Qxy, Z4x):
    Q = ideal_quotient([Qx("x^2")], Qx("x"))
    assert _same_ideal(Q, [Qx("x")])
    Q = ideal_quotient([], Qxy("x"))
    assert all(g.is_zero() for g in Q.generators)
    Q = ideal_quotient([], Z4x("2"))
    assert _same_ideal(Q, [Z4x("2")])
    Q = ideal_quotient([Qxy("x*y")], Qxy("x"))
    assert _same_ideal(Q, [Qxy("y")])


@pytest.mark.parametrize("order", [GREVLEX, LEX])
def test_quotient_contains_ideal_and_is_order_independent(Qxy, order):
    I = [Qxy("x^2*y - y"), Qxy("x*y^2")]
    a = Qxy("x*y")
    Q = ideal_quotient(I, a, order)
    assert all(Q.contains(g) for g in I)
    Q2 = ideal_quotient(I, a, LEX if order == GREVLEX else GREVLEX)
    assert all(Q.contains(g) for g in Q2.generators) and all(Q2.contains(g) for g in Q.generators)


def test_unit_ideal_detection(Zx):
    G = groebner_basis([Zx("2*x + 1"), Zx("x")])
    assert G.is_unit_ideal()
    G = groebner_basis([Zx("2"), Zx("x")])
    assert not G.is_unit_ideal()


def test_zmod_basis_with_zero_divisors():
    R = PolyRing(Zmod(6), ("x", "y"))
    F = [R("2*x*y + 3*y"), R("3*x^2 + 1")]
    G = groebner_basis(F)
    assert G.audit()
    for f in F:
        assert G.contains(f)
    for v in syzygies(F):
        assert v.evaluate(F).is_zero()


def test_member_agrees_with_linear_algebra_gf2(F2xy):
    F = [F2xy("x^2 + y"), F2xy("x*y + 1")]
    for h in (F2xy("y^2 + x"), F2xy("x^3 + 1"), F2xy("x + y"), F2xy("y^3 + 1"), F2xy("x^3 + y^2")):
        assert (ideal_member(h, F) is not None) == member(h, F, 2, 10)


def test_syzygies_complete_small_gf2(F2xy):
    # every relation of degree <= 2 is generated by the computed syzygies
    for F in ([F2xy("x"), F2xy("y")], [F2xy("x*y"), F2xy("x^2")], [F2xy("x + 1"), F2xy("x*y + y"), F2xy("y")]):
        S = syzygies(F)
        U, K = syzygy_kernel(F, 2, 2, 4)
        Sp, E = module_span([list(v) for v in S], 2, 10, len(F))
        assert all(E.reduce(recode(k, U, Sp)) == 0 for k in K)
