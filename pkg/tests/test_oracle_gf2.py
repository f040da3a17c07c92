"""Engine answers against brute-force GF(2) linear algebra."""

import pytest

from corpus import gf2_corpus
from oracles import colon_excess, member, module_span, recode, syzygy_kernel
from secant.groebner import ideal_member, syzygies
from secant.regseq import is_regular_element

# truncation bounds large enough that every corpus instance is decided exactly
MEMBER_BOUND = 12
COLON_BOUND, COLON_GBOUND = 14, 4
SYZ_DEGREE, SYZ_BOUND, SPAN_BOUND = 4, 7, 16


def disagreements(F, a, h) -> list[str]:
    n = F[0].ring.nvars
    out = []
    if (ideal_member(h, F) is not None) != member(h, F, n, MEMBER_BOUND):
        out.append("ideal_member")
    step = is_regular_element(a, F)
    if step.regular == bool(colon_excess(a, F, n, COLON_BOUND, COLON_GBOUND)):
        out.append("is_regular_element")
    rels = syzygies(F)
    if any(not v.evaluate(F).is_zero() for v in rels):
        out.append("syzygies (unsound)")
    U, kernel = syzygy_kernel(F, n, SYZ_DEGREE, SYZ_BOUND)
    S, E = module_span([list(v) for v in rels], n, SPAN_BOUND, len(F))
    if any(E.reduce(recode(k, U, S)) for k in kernel):
        out.append("syzygies (incomplete)")
    return out


def test_corpus_is_fixed():
    a, b = gf2_corpus(20), gf2_corpus(20)
    assert [tuple(map(str, F)) + (str(x), str(h)) for F, x, h in a] == \
        [tuple(map(str, F)) + (str(x), str(h)) for F, x, h in b]


@pytest.mark.parametrize("chunk", range(5))
def test_engine_matches_oracle(chunk):
    corpus = gf2_corpus()[chunk * 100:(chunk + 1) * 100]
    bad = [(F, a, h, d) for F, a, h in corpus for d in [disagreements(F, a, h)] if d]
    assert not bad, bad[:3]
