"""The ``flatcert/1`` JSON certificate and its independent verifier.

The verifier works on the JSON document alone.  It parses polynomials with
the shared text syntax and checks every recorded identity by ring and
polynomial arithmetic; no Gröbner basis is computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .linalg import det, matmul
from .poly import MultiPoly, PolyRing, is_monic_in, reduce_coefficients
from .ring import BaseRing, factor_int, ideal_normalize, parse_ring, quotient_ring
from .syntax import parse_poly

SCHEMA = "flatcert/1"


# -- encoding ------------------------------------------------------------------


def encode_scalar(a) -> int | str:
    if isinstance(a, Fraction):
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    return int(a)


def decode_scalar(x, R: BaseRing):
    if isinstance(x, bool):
        raise ValueError("boolean is not a ring element")
    if isinstance(x, str):
        return R(Fraction(x))
    if isinstance(x, int):
        return R(x)
    raise ValueError(f"bad scalar {x!r}")


def _polys(fs) -> list[str]:
    return [str(f) for f in fs]


def _matrix(M) -> list[list]:
    return [[encode_scalar(a) for a in row] for row in M]


def annihilators_to_list(witnesses, ring: PolyRing) -> list[dict]:
    return [
        {"variable": ring.variables[w.variable], "polynomial": str(w.polynomial), "cofactors": _polys(w.cofactors)}
        for w in witnesses
    ]


def _presentation_dict(P) -> dict:
    return {
        "generators": [str(g) for g in P.generator_polys()],
        "rank": P.rank,
        "matrices": [_matrix(M) for M in P.matrices],
        "closure": [[_polys(q) for q in cl] for cl in P.closure],
        "relations": [[encode_scalar(a) for a in col] for col in P.relations],
        "relation_cofactors": [_polys(q) for q in P.relation_cofactors],
    }


def _structure_dict(S) -> dict:
    out: dict[str, Any] = {"kind": S.kind, "generators": S.generators}
    if S.kind == "field":
        out["dimension"] = S.rank
        return out
    out["free_rank"] = S.rank
    out["presentation"] = S.presentation
    if S.kind == "ZZ":
        if S.D is not None:
            out["smith"] = {"U": S.U, "V": S.V, "D": S.D}
        return out
    out["factors"] = [
        {"prime": f.prime, "exponent": f.exponent, "rank": f.rank,
         **({"smith": {"U": f.U, "V": f.V, "D": f.D}} if f.D else {})}
        for f in S.factors
    ]
    return out


def witness_to_dict(w) -> dict:
    out = {"method": w.method, "h": str(w.h), "u": _polys(w.u), "w": _polys(w.w), "v": _polys(w.v)}
    if w.M is not None:
        out["M"] = [_polys(row) for row in w.M.entries]
    return out


def certificate_to_dict(cert) -> dict:
    """JSON-ready dictionary of a FlatnessCertificate (stable key order)."""
    ring = cert.ring
    R = ring.base
    lemma = cert.lemma
    doc = {
        "schema": SCHEMA,
        "ring": str(R),
        "variables": list(ring.variables),
        "order": str(cert.presentation.order),
        "relations": _polys(cert.relations),
        "finiteness": _presentation_dict(cert.presentation),
        "annihilators": annihilators_to_list(lemma.witnesses, ring),
        "completely_secant": {
            "holds": cert.completely_secant,
            "method": "regular-subsequence",
            "length": len(cert.relations),
            "sequence": _polys(lemma.sequence),
        },
        "module_structure": _structure_dict(cert.structure),
        "quotients": [
            {
                "ideal": encode_scalar(q.ideal.generator),
                "ring": str(q.relations[0].ring.base),
                "relations": _polys(q.relations),
                "annihilators": annihilators_to_list(q.lemma.witnesses, q.relations[0].ring),
            }
            for q in cert.quotients
        ],
        "rewrites": [
            {
                "ideal": encode_scalar(inc.ideal.generator),
                "degree_bound": inc.degree_bound,
                "ok": inc.ok,
                "failure": None if inc.failure is None else str(inc.failure),
                "witnesses": [witness_to_dict(w) for w in inc.witnesses],
            }
            for inc in cert.inclusions
        ],
    }
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- verification ----------------------------------------------------------------


@dataclass
class VerificationReport:
    items: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.items) and all(ok for _, ok, _ in self.items)

    def __bool__(self):
        return self.ok

    @property
    def first_failure(self) -> tuple[str, str] | None:
        for name, ok, detail in self.items:
            if not ok:
                return name, detail
        return None


class _Check(Exception):
    pass


def _require(cond: bool, msg: str):
    if not cond:
        raise _Check(msg)


def _dot(u, F, ring: PolyRing) -> MultiPoly:
    total = ring.zero()
    for a, f in zip(u, F):
        total = total + a * f
    return total


class _Verifier:
    def __init__(self, doc: dict):
        self.doc = doc
        self.report = VerificationReport()

    def check(self, name: str, fn: Callable[[], None]):
        try:
            fn()
        except _Check as e:
            self.report.items.append((name, False, str(e)))
        except Exception as e:  # malformed data counts as a failed item
            self.report.items.append((name, False, f"{type(e).__name__}: {e}"))
        else:
            self.report.items.append((name, True, ""))

    def run(self) -> VerificationReport:
        doc = self.doc
        try:
            _require(doc.get("schema") == SCHEMA, f"schema is not {SCHEMA}")
            R = parse_ring(doc["ring"])
            ring = PolyRing(R, tuple(doc["variables"]))
            F = [parse_poly(t, ring) for t in doc["relations"]]
            _require(len(F) == ring.nvars, "number of relations differs from number of variables")
        except Exception as e:
            self.report.items.append(("header", False, str(e)))
            return self.report
        self.report.items.append(("header", True, ""))
        self.ring, self.F = ring, F
        self.check("finiteness/generators", self._generators)
        fin = doc["finiteness"]
        for i, v in enumerate(ring.variables):
            self.check(f"finiteness/closure[{v}]", lambda i=i: self._closure(i))
        for k in range(len(fin.get("relations", []))):
            self.check(f"finiteness/presentation[{k}]", lambda k=k: self._presentation_column(k))
        for k, a in enumerate(doc["annihilators"]):
            self.check(f"annihilator[{a.get('variable')}]", lambda a=a: self._annihilator(a, ring, F))
        self.check("completely-secant", self._secant)
        self.check("module-structure", self._structure)
        for q in doc.get("quotients", []):
            self.check(f"quotient[{q.get('ideal')}]", lambda q=q: self._quotient(q))
        for g in doc.get("rewrites", []):
            for k, w in enumerate(g.get("witnesses", [])):
                self.check(f"rewrite[{g.get('ideal')}][{k}]", lambda g=g, w=w: self._rewrite(g, w))
            self.check(f"rewrite[{g.get('ideal')}]/status", lambda g=g: _require(
                g.get("ok") is True and g.get("failure") is None, "inclusion check reported a failure"))
        return self.report

    # finiteness data
    def _gens(self):
        return [parse_poly(t, self.ring) for t in self.doc["finiteness"]["generators"]]

    def _generators(self):
        gens = self._gens()
        fin = self.doc["finiteness"]
        _require(fin["rank"] == len(gens), "rank differs from the number of generators")
        _require(all(len(g) == 1 and g.coefficients() == [self.ring.base.one()] for g in gens),
                 "generators must be monomials")
        _require(len(set(gens)) == len(gens), "repeated generator")
        _require(self.ring.one() in gens, "1 is not among the generators")

    def _element(self, coords, gens) -> MultiPoly:
        R = self.ring.base
        out = self.ring.zero()
        for c, g in zip(coords, gens):
            out = out + g.scale(decode_scalar(c, R))
        return out

    def _closure(self, i: int):
        fin = self.doc["finiteness"]
        gens = self._gens()
        M = fin["matrices"][i]
        N = len(gens)
        _require(len(M) == N and all(len(r) == N for r in M), "matrix has the wrong shape")
        xi = self.ring.var(i)
        for c, g in enumerate(gens):
            cof = [parse_poly(t, self.ring) for t in fin["closure"][i][c]]
            _require(len(cof) == len(self.F), "wrong number of closure cofactors")
            lhs = xi * g - self._element([M[r][c] for r in range(N)], gens)
            _require(lhs == _dot(cof, self.F, self.ring), f"closure identity fails for generator {g}")

    def _presentation_column(self, k: int):
        fin = self.doc["finiteness"]
        gens = self._gens()
        col = fin["relations"][k]
        cof = [parse_poly(t, self.ring) for t in fin["relation_cofactors"][k]]
        _require(len(col) == len(gens), "presentation column has the wrong length")
        _require(self._element(col, gens) == _dot(cof, self.F, self.ring), "presentation cofactor identity fails")

    # annihilators and the regular sequence
    def _annihilator(self, a: dict, ring: PolyRing, F):
        chi = parse_poly(a["polynomial"], ring)
        i = ring.index(a["variable"])
        if ring.base.is_zero_ring:
            return
        _require(not (chi.variables_used() - {i}), "annihilator involves other variables")
        _require(chi.degree_in(i) >= 1 and is_monic_in(chi, i), "annihilator is not monic")
        cof = [parse_poly(t, ring) for t in a["cofactors"]]
        _require(len(cof) == len(F), "wrong number of cofactors")
        _require(_dot(cof, F, ring) == chi, "cofactor identity fails")

    def _sequence_structure(self, anns: list[dict], ring: PolyRing):
        names = [a["variable"] for a in anns]
        _require(sorted(names) == sorted(ring.variables) and len(set(names)) == len(names),
                 "need exactly one annihilator per variable")

    def _secant(self):
        doc = self.doc
        cs = doc["completely_secant"]
        anns = doc["annihilators"]
        self._sequence_structure(anns, self.ring)
        seq = [parse_poly(t, self.ring) for t in cs["sequence"]]
        _require(seq == [parse_poly(a["polynomial"], self.ring) for a in anns],
                 "sequence differs from the annihilators")
        _require(cs["length"] == len(self.F) == len(seq), "length mismatch")
        # each element is monic in a variable absent from its predecessors
        used: set[int] = set()
        for a, chi in zip(anns, seq):
            i = self.ring.index(a["variable"])
            _require(i not in used and is_monic_in(chi, i), "regularity is not structural")
            used |= chi.variables_used()
        _require(cs["holds"] is True, "statement not asserted")

    # module structure
    def _structure(self):
        S = self.doc["module_structure"]
        R = self.ring.base
        N = self.doc["finiteness"]["rank"]
        _require(S["generators"] == N, "generator count mismatch")
        if R.is_field:
            _require(S["kind"] == "field" and S["dimension"] == N, "dimension differs from the generator count")
            return
        cols = self.doc["finiteness"]["relations"]
        P = [[int(decode_scalar(col[r], R)) for col in cols] for r in range(N)]
        _require(S["presentation"] == P, "presentation matrix differs from the recorded relations")
        if R.kind == "ZZ":
            _require(S["kind"] == "ZZ", "wrong kind")
            units = self._smith(P, S.get("smith"), None)
            _require(S["free_rank"] == N - units, "free rank inconsistent with the Smith form")
            return
        _require(S["kind"] == "ZZmod", "wrong kind")
        facs = factor_int(R.modulus)
        got = {(f["prime"], f["exponent"]) for f in S["factors"]}
        _require(got == set(facs.items()) and len(got) == len(S["factors"]), "prime factorisation mismatch")
        ranks = set()
        for f in S["factors"]:
            q = f["prime"] ** f["exponent"]
            units = self._smith(P, f.get("smith"), (f["prime"], q))
            _require(f["rank"] == N - units, "local rank inconsistent with the Smith form")
            ranks.add(f["rank"])
        want = ranks.pop() if len(ranks) == 1 else (0 if not S["factors"] else None)
        _require(S["free_rank"] == want, "free rank inconsistent with the local ranks")

    def _smith(self, P, smith, local) -> int:
        """Check U*P*V == D with U, V invertible and D a diagonal of unit or
        zero divisors; return the number of unit divisors."""
        N = len(P)
        r = len(P[0]) if P else 0
        if r == 0:
            _require(smith is None, "Smith data recorded for an empty presentation")
            return 0
        _require(smith is not None, "missing Smith form")
        U, V, D = smith["U"], smith["V"], smith["D"]
        _require(len(U) == N and all(len(x) == N for x in U), "U has the wrong shape")
        _require(len(V) == r and all(len(x) == r for x in V), "V has the wrong shape")
        _require(len(D) == N and all(len(x) == r for x in D), "D has the wrong shape")
        red = (lambda x: x) if local is None else (lambda x: x % local[1])
        prod = [[red(x) for x in row] for row in matmul(matmul(U, P), V)]
        _require(prod == [[red(x) for x in row] for row in D], "U*P*V != D")
        for M in (U, V):
            d = det(M, reduce=red)
            if local is None:
                _require(d in (1, -1), "transform is not unimodular")
            else:
                _require(d % local[0] != 0, "transform is not invertible")
        units = 0
        for i in range(N):
            for j in range(r):
                x = red(D[i][j])
                if i != j:
                    _require(x == 0, "D is not diagonal")
                elif local is None:
                    _require(x in (0, 1, -1), f"non-unit elementary divisor {x}")
                    units += x != 0
                else:
                    _require(x in (0, 1), f"non-unit elementary divisor {x}")
                    units += x == 1
        return units

    # quotients and rewrites
    def _ideal(self, gen):
        R = self.ring.base
        return ideal_normalize([decode_scalar(gen, R)], R)

    def _quotient(self, q: dict):
        c = self._ideal(q["ideal"])
        Q = quotient_ring(self.ring.base, c)
        _require(str(Q) == q["ring"].replace(" ", ""), "quotient ring mismatch")
        qring = self.ring.with_base(Q)
        Fbar = [parse_poly(t, qring) for t in q["relations"]]
        _require(Fbar == [reduce_coefficients(f, c) for f in self.F], "reduced relations mismatch")
        self._sequence_structure(q["annihilators"], qring)
        used: set[int] = set()
        for a in q["annihilators"]:
            self._annihilator(a, qring, Fbar)
            if not Q.is_zero_ring:
                i = qring.index(a["variable"])
                _require(i not in used, "regularity is not structural")
                used |= parse_poly(a["polynomial"], qring).variables_used()

    def _rewrite(self, g: dict, w: dict):
        ring, F = self.ring, self.F
        c = self._ideal(g["ideal"])
        P = lambda t: parse_poly(t, ring)  # noqa: E731
        h = P(w["h"])
        u, v, ww = [list(map(P, w[k])) for k in ("u", "v", "w")]
        s = len(F)
        _require(len(u) == len(v) == len(ww) == s, "cofactor vectors have the wrong length")
        _require(_dot(u, F, ring) == h, "sum u_i f_i != h")
        _require(_dot(v, F, ring) == h, "sum v_i f_i != h")
        _require(all(reduce_coefficients(x, c).is_zero() for x in v), "v has coefficients outside the ideal")
        _require(all(wi == ui - vi for wi, ui, vi in zip(ww, u, v)), "w != u - v")
        if w["method"] == "antisymmetric":
            M = [list(map(P, row)) for row in w["M"]]
            _require(len(M) == s and all(len(r) == s for r in M), "M has the wrong shape")
            for i in range(s):
                _require(M[i][i].is_zero(), "M has a nonzero diagonal")
                for j in range(i + 1, s):
                    _require((M[i][j] + M[j][i]).is_zero(), "M is not antisymmetric")
            FM = [_dot([F[i] for i in range(s)], [M[i][j] for i in range(s)], ring) for j in range(s)]
            _require(FM == ww, "w != F*M")
        else:
            _require(w["method"] == "membership", f"unknown method {w['method']!r}")
            _require(_dot(ww, F, ring).is_zero(), "sum w_i f_i != 0")


def verify_certificate(cert) -> VerificationReport:
    """Re-check a certificate (a FlatnessCertificate, a ``flatcert/1``
    dictionary or its JSON text) item by item."""
    if isinstance(cert, str):
        try:
            cert = json.loads(cert)
        except json.JSONDecodeError as e:
            return VerificationReport([("header", False, f"invalid JSON: {e}")])
    if not isinstance(cert, dict) and hasattr(cert, "to_dict"):
        cert = cert.to_dict()
    if not isinstance(cert, dict):
        return VerificationReport([("header", False, "certificate is not a JSON object")])
    return _Verifier(cert).run()
