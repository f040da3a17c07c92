import pytest

from oracles import colon_excess, member
from secant.groebner import SyzygyVector
from secant.poly import PolyRing
from secant.regseq import (
    NotTriviallyGenerated,
    express_syzygy_antisymmetric,
    is_regular_element,
    is_regular_sequence,
    is_trivial_syzygy_generated,
    koszul_relations,
)
from secant.ring import GF, QQ


def test_regular_element_examples(Qxy, Z4x):
    assert is_regular_element(Qxy("x")).regular
    step = is_regular_element(Z4x("2"))
    assert not step.regular and step.witness == Z4x("2")
    step = is_regular_element(Qxy("x"), [Qxy("x*y")])
    assert not step.regular and step.witness == Qxy("y")
    assert step.verify()


def test_regular_sequence_examples(Qxy, Qx):
    cert = is_regular_sequence([Qxy("x"), Qxy("y")])
    assert cert.ok and cert.verify()
    cert = is_regular_sequence([Qxy("x*y"), Qxy("x")])
    assert not cert.ok and cert.failed_at == 2 and cert.witness == Qxy("y")
    assert cert.verify()
    cert = is_regular_sequence([Qx("x"), Qx("x - 1")])
    assert cert.ok and cert.verify()


def test_structural_and_quotient_routes_agree(Qxy):
    seq = [Qxy("x^2 - 1"), Qxy("y^3 + x*y - 2")]
    a = is_regular_sequence(seq, structural=True)
    b = is_regular_sequence(seq, structural=False)
    assert a.ok and b.ok
    assert a.steps[1].method == "monic" and b.steps[1].method == "quotient"
    assert a.verify() and b.verify()


def test_tampered_step_fails_verification(Qxy):
    step = is_regular_element(Qxy("x"), [Qxy("x*y")])
    step.witness = Qxy("x")
    assert not step.verify()
    step = is_regular_element(Qxy("x"), [Qxy("x*y")])
    step.regular, step.witness = True, None
    assert not step.verify()


def test_koszul_examples(Qxy):
    a, b = Qxy("x + 1"), Qxy("y^2")
    assert [list(v) for v in koszul_relations([a, b])] == [[b, -a]]
    assert koszul_relations([a]) == []
    assert len(koszul_relations([a, b, Qxy("x*y")])) == 3


def test_usc_examples(Qxy, Qx):
    assert is_trivial_syzygy_generated([Qxy("x"), Qxy("y")]).ok
    rep = is_trivial_syzygy_generated([Qx("x"), Qx("x")])
    assert not rep.ok and rep.failing is not None
    rep = is_trivial_syzygy_generated([Qx("0")])
    assert not rep.ok and list(rep.failing) == [Qx.one()]


def test_antisymmetric_examples(Qxy):
    F = [Qxy("x"), Qxy("y")]
    N = express_syzygy_antisymmetric([Qxy("y"), Qxy("-x")], F)
    assert N.entries == [[Qxy("0"), Qxy("-1")], [Qxy("1"), Qxy("0")]]
    assert N.row_product(F) == [Qxy("y"), Qxy("-x")]
    assert express_syzygy_antisymmetric([Qxy("0"), Qxy("0")], F).is_zero()
    N = express_syzygy_antisymmetric([Qxy("x*y"), Qxy("-x^2")], F)
    assert N.entries == [[Qxy("0"), Qxy("-x")], [Qxy("x"), Qxy("0")]]


def test_antisymmetric_rejects_nontrivial(Qx):
    with pytest.raises(NotTriviallyGenerated):
        express_syzygy_antisymmetric([Qx("1"), Qx("-1")], [Qx("x"), Qx("x")])
    with pytest.raises(ValueError):
        express_syzygy_antisymmetric([Qx("1"), Qx("1")], [Qx("x"), Qx("x")])


def test_three_term_antisymmetric():
    R = PolyRing(QQ(), ("x", "y", "z"))
    F = [R("x"), R("y"), R("z")]
    u = SyzygyVector((R("y + z"), R("-x + z"), R("-x - y")))
    assert u.evaluate(F).is_zero()
    N = express_syzygy_antisymmetric(u, F)
    assert N.is_antisymmetric() and N.row_product(F) == list(u)


def test_regularity_matches_truncated_quotient_gf2():
    # F2[x] modulo an ideal containing a power of x is finite; compare with
    # injectivity of multiplication computed by linear algebra
    R = PolyRing(GF(2), ("x",))
    for I_text, a_text in [("x^3", "x"), ("x^3", "x + 1"), ("x^2 + x", "x"), ("x^3 + 1", "x^2 + x + 1"),
                           ("x^3 + x", "x + 1"), ("x^2", "x^2 + 1")]:
        I, a = [R(I_text)], R(a_text)
        step = is_regular_element(a, I)
        assert step.regular == (not colon_excess(a, I, 1, 10, 3))
        if not step.regular:
            assert member(step.witness * a, I, 1, 10) and not member(step.witness, I, 1, 10)
