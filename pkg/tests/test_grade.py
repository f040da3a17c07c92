import pytest

from secant.grade import grade_at_least, is_completely_secant, kronecker_sequence
from secant.poly import PolyRing
from secant.ring import GF, QQ


@pytest.fixture
def Qxyz():
    return PolyRing(QQ(), ("x", "y", "z"))


def test_kronecker_examples(Qxy):
    k = kronecker_sequence([Qxy("x"), Qxy("y")], 2)
    assert list(map(str, k.forms)) == ["x*U1 + y*U2", "x*V1 + y*V2"]
    assert k.blocks == [["U1", "U2"], ["V1", "V2"]]
    k1 = kronecker_sequence([Qxy("x + y")], 1)
    assert k1.forms == [k1.ring("(x + y)*U1")]
    assert all(k.content_matches(j) for j in range(k.length))


def test_kronecker_prefix_avoids_collisions():
    R = PolyRing(QQ(), ("x", "U1"))
    k = kronecker_sequence([R("x"), R("U1")], 1)
    assert set(k.blocks[0]).isdisjoint(R.variables)


def test_quadratic_shape_keeps_content(Qxy):
    k = kronecker_sequence([Qxy("x"), Qxy("y*(1 - x)")], 2, shape="quadratic")
    assert all(k.content_matches(j) for j in range(2))
    assert "U2^2" in str(k.forms[0])


def test_grade_examples(Qxy):
    cert = grade_at_least([Qxy("x"), Qxy("y")], 2)
    assert cert.ok and cert.verify()
    cert = grade_at_least([Qxy("x")], 2)
    assert not cert.ok
    assert str(cert.witness) == "U1"
    assert cert.verify()
    for k in (1, 2, 3):
        assert grade_at_least([Qxy("1")], k).ok


def test_secant_examples(Qxy, Qxyz):
    assert is_completely_secant([Qxy("x"), Qxy("y")]).ok
    assert not is_completely_secant([Qxy("x"), Qxy("x")]).ok
    rep = is_completely_secant([Qxyz("y*(1 - x)"), Qxyz("z*(1 - x)"), Qxyz("x")])
    assert rep.ok and rep.method == "kronecker"


def test_known_regular_shortcut(Qxyz):
    seq = [Qxyz("y*(1 - x)"), Qxyz("z*(1 - x)"), Qxyz("x")]
    rep = is_completely_secant(seq, known_regular=[Qxyz("x"), Qxyz("y"), Qxyz("z")])
    assert rep.ok and rep.method == "regular-subsequence"
    assert all(m is not None for m in rep.memberships)


INSTANCES = [
    (QQ(), ["x"]), (QQ(), ["x", "y"]), (QQ(), ["x", "y*(1 - x)"]),
    (GF(2), ["x"]), (GF(2), ["x", "y"]), (GF(2), ["x", "y*(1 - x)"]),
]


@pytest.mark.parametrize("base,gens", INSTANCES)
def test_grade_monotone(base, gens):
    R = PolyRing(base, ("x", "y"))
    G = [R(g) for g in gens]
    verdicts = [grade_at_least(G, k).ok for k in (1, 2)]
    assert verdicts[1] <= verdicts[0]
