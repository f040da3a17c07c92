import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from secant.poly import PolyRing  # noqa: E402
from secant.ring import GF, QQ, ZZ, Zmod  # noqa: E402


@pytest.fixture
def Qxy():
    return PolyRing(QQ(), ("x", "y"))


@pytest.fixture
def Zxy():
    return PolyRing(ZZ(), ("x", "y"))


@pytest.fixture
def Qx():
    return PolyRing(QQ(), ("x",))


@pytest.fixture
def Zx():
    return PolyRing(ZZ(), ("x",))


@pytest.fixture
def Z4x():
    return PolyRing(Zmod(4), ("x",))


@pytest.fixture
def F2xy():
    return PolyRing(GF(2), ("x", "y"))
