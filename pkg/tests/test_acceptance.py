"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (or as a script).
"""

from __future__ import annotations

import random
import time

import pytest

from corpus import certificate_corpus, gf2_corpus, monic_triangular, zz_relation_instances
from mutations import mutations
from test_oracle_gf2 import disagreements
from secant.certificate import verify_certificate
from secant.finite import NotDetectedFinite, regular_sequence_from_finiteness
from secant.flatness import certify_de_smit_lenstra, rewrite_with_ideal_coefficients
from secant.grade import grade_at_least, is_completely_secant
from secant.poly import PolyRing, reduce_coefficients
from secant.regseq import is_regular_sequence, is_trivial_syzygy_generated
from secant.ring import GF, QQ, ZZ, ideal_normalize


def report(number: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = "") -> bool:
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s, limit {limit:g}s)"
    if detail:
        line += f" {detail}"
    print(line)
    return status == "PASS"


def _timed(fn):
    t = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t


def criterion_1():
    R = PolyRing(QQ(), ("x", "y"))
    F = [R("x^2 - 1"), R("y^2 - x")]
    L = regular_sequence_from_finiteness(F)
    seq_ok = L.sequence == [R("y^4 - 1"), R("x^2 - 1")]
    identity = R("(y^2 + x)*(y^2 - x) + (x^2 - 1)") == R("y^4 - 1")
    cof = L.witnesses[0].cofactors
    cof_ok = cof == [R("1"), R("y^2 + x")] and all(w.verify() for w in L.witnesses)
    full = is_regular_sequence(L.sequence, structural=False)
    ok = seq_ok and identity and cof_ok and L.certificate.ok and full.ok and full.verify()
    return ok, f"sequence ({', '.join(map(str, L.sequence))})"


def criterion_2():
    rng = random.Random(2)
    failures = 0
    count = 0
    for base in (QQ(), GF(5)):
        for k in range(100):
            n = 1 + k % 3
            _, seq = monic_triangular(rng, base, n, max_degree=3)
            count += 1
            if not (is_regular_sequence(seq).ok and is_trivial_syzygy_generated(seq).ok):
                failures += 1
    return failures == 0, f"{count - failures}/{count} usc"


def criterion_3():
    R = PolyRing(ZZ(), ("x", "y"))
    a2 = ideal_normalize([2], ZZ())
    w = rewrite_with_ideal_coefficients(R("2*y^2"), [R("y"), R("-x + 2*y")], [R("x"), R("y")], a2)
    example = w.verify() and w.v == [R("0"), R("2*y")] and \
        all(reduce_coefficients(v, a2).is_zero() for v in w.v)
    good = 0
    instances = zz_relation_instances(100)
    for h, u, F, a in instances:
        I = ideal_normalize([a], ZZ())
        wit = rewrite_with_ideal_coefficients(h, u, F, I)
        if wit.verify() and all(reduce_coefficients(v, I).is_zero() for v in wit.v):
            good += 1
    return example and good == len(instances), f"example v = ({', '.join(map(str, w.v))}); {good}/100 random"


def criterion_4():
    Zx = PolyRing(ZZ(), ("x",))
    Qxy = PolyRing(QQ(), ("x", "y"))
    results = []
    t = time.perf_counter()
    c1 = certify_de_smit_lenstra([Zx("x^2 - 3*x")])
    results.append((c1.structure.rank == 2, time.perf_counter() - t))
    t = time.perf_counter()
    c2 = certify_de_smit_lenstra([Qxy("x^2 - 1"), Qxy("y^2 - x")])
    results.append((c2.structure.rank == 4, time.perf_counter() - t))
    t = time.perf_counter()
    try:
        certify_de_smit_lenstra([Zx("2*x - 2")])
        ndf = False
    except NotDetectedFinite:
        ndf = True
    results.append((ndf, time.perf_counter() - t))
    ok = all(r and dt < 5 for r, dt in results)
    return ok, "free rank 2, dimension 4, NotDetectedFinite; each " + \
        ", ".join(f"{dt:.2f}s" for _, dt in results)


def criterion_5():
    R = PolyRing(QQ(), ("x", "y"))
    g1 = grade_at_least([R("x"), R("y")], 2)
    g2 = grade_at_least([R("x")], 2)
    S = PolyRing(QQ(), ("x", "y", "z"))
    seq = [S("y*(1 - x)"), S("z*(1 - x)"), S("x")]
    sec = is_completely_secant(seq)
    reg = is_regular_sequence(seq)
    ok = (g1.ok and g1.verify() and not g2.ok and g2.verify() and sec.ok
          and not reg.ok and reg.failed_at == 2 and reg.witness == S("y") and reg.verify())
    return ok, f"Kaplansky sequence secant={sec.ok}, regular fails at {reg.failed_at} with witness {reg.witness}"


def criterion_6():
    verdicts = []
    for base in (QQ(), GF(2)):
        R = PolyRing(base, ("x", "y"))
        for gens in (["x"], ["x", "y"], ["x", "y*(1 - x)"]):
            G = [R(g) for g in gens]
            for k in (1, 2):
                lin = grade_at_least(G, k, shape="linear")
                quad = grade_at_least(G, k, shape="quadratic")
                verdicts.append((lin.ok, quad.ok, lin.verify() and quad.verify()))
    ok = all(a == b and v for a, b, v in verdicts)
    return ok, f"{sum(a == b for a, b, _ in verdicts)}/{len(verdicts)} verdicts agree"


def criterion_7():
    docs = certificate_corpus()
    accepted = sum(verify_certificate(d).ok for d in docs)
    pool = [m for d in docs for m in mutations(d)]
    sample = random.Random(7).sample(pool, 50)
    rejected = sum(not verify_certificate(doc).ok for _, doc in sample)
    return accepted == len(docs) and rejected == 50, \
        f"{accepted}/{len(docs)} accepted, {rejected}/50 mutations rejected"


def criterion_8():
    corpus = gf2_corpus(500)
    bad = sum(1 for F, a, h in corpus if disagreements(F, a, h))
    return bad == 0, f"{len(corpus) - bad}/{len(corpus)} instances agree"


CRITERIA = [
    (1, "finiteness to regular sequence of monic annihilators", criterion_1, 1),
    (2, "monic triangular sequences are trivial-syzygy generated", criterion_2, 60),
    (3, "rewriting with ideal coefficients", criterion_3, 30),
    (4, "end-to-end flatness certificates", criterion_4, 15),
    (5, "grade and completely secant sequences", criterion_5, 30),
    (6, "linear vs quadratic Kronecker sequences", criterion_6, 60),
    (7, "certificate soundness under mutation", criterion_7, 30),
    (8, "GF(2) brute-force oracle equivalence", criterion_8, 120),
]


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    ok, detail, elapsed = _timed(fn)
    with capsys.disabled():
        print()
        passed = report(number, title, ok, elapsed, limit, detail)
    assert passed, detail


if __name__ == "__main__":
    results = []
    for number, title, fn, limit in CRITERIA:
        ok, detail, elapsed = _timed(fn)
        results.append(report(number, title, ok, elapsed, limit, detail))
    raise SystemExit(0 if all(results) else 1)
