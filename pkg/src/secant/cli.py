"""``secant`` command line interface.

Exit status: 0 on mathematical success, 1 on mathematical failure (not
regular, not finite, check failed, ...), 2 on input errors.  With
``--json`` a single JSON document is written to stdout; ``--explain``
writes a human-readable account to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certificate import (
    SCHEMA,
    annihilators_to_list,
    certificate_to_dict,
    dumps,
    encode_scalar,
    verify_certificate,
    witness_to_dict,
)
from .finite import (
    NotDetectedFinite,
    UnsupportedBase,
    finiteness_basis,
    jacobian_criterion,
    regular_sequence_from_finiteness,
)
from .flatness import (
    NonUnitDivisor,
    NotARelationModA,
    certify_de_smit_lenstra,
    check_flatness_inclusion,
    rewrite_with_ideal_coefficients,
)
from .grade import grade_at_least, is_completely_secant
from .groebner import syzygies
from .orders import order_from_name
from .problem import ProblemError, ProblemSpec, parse_ideal, parse_problem
from .regseq import (
    NotTriviallyGenerated,
    is_regular_sequence,
    is_trivial_syzygy_generated,
    koszul_relations,
)
from .ring import RingError
from .syntax import ParseError

COMMANDS = ("check-regular", "syzygies", "koszul", "usc", "grade", "secant", "annihilators",
            "jacobian", "rewrite", "inclusion", "certify", "verify")


class InputError(Exception):
    pass


def _polys(fs):
    return [str(f) for f in fs]


def _need_F(spec: ProblemSpec):
    F = spec.F
    if not F:
        raise InputError("the problem declares no relations f1, f2, ...")
    return F


def _ideals(spec: ProblemSpec, args):
    if args.ideal:
        return [parse_ideal(x, spec.base) for x in args.ideal]
    return list(spec.ideals)


def _steps(cert):
    return [
        {"element": str(s.element), "regular": s.regular, "method": s.method, "variable": s.variable,
         "witness": None if s.witness is None else str(s.witness)}
        for s in cert.steps
    ]


# -- commands ---------------------------------------------------------------------
# Each returns (ok, payload, explanation lines).


def cmd_check_regular(spec, args, order):
    F = _need_F(spec)
    cert = is_regular_sequence(F, (), order)
    payload = {"regular": cert.ok, "failed_at": cert.failed_at,
               "witness": None if cert.witness is None else str(cert.witness), "steps": _steps(cert)}
    if cert.ok:
        lines = ["the sequence is regular"]
    else:
        lines = [f"element {cert.failed_at} is a zero divisor modulo its predecessors",
                 f"witness {cert.witness}: outside the ideal, but its product with the element lies inside"]
    return cert.ok, payload, lines


def cmd_syzygies(spec, args, order):
    F = _need_F(spec)
    rels = syzygies(F, order)
    return True, {"sequence": _polys(F), "syzygies": [_polys(v) for v in rels]}, \
        [f"{len(rels)} generators of the relation module"]


def cmd_koszul(spec, args, order):
    F = _need_F(spec)
    rels = koszul_relations(F)
    return True, {"sequence": _polys(F), "koszul": [_polys(v) for v in rels]}, \
        [f"{len(rels)} trivial relations"]


def cmd_usc(spec, args, order):
    F = _need_F(spec)
    rep = is_trivial_syzygy_generated(F, order)
    payload = {"usc": rep.ok, "syzygies": [_polys(v) for v in rep.relations],
               "expressions": [_polys(c) for c in rep.expressions],
               "failing": None if rep.failing is None else _polys(rep.failing)}
    lines = ["every relation is a combination of the trivial ones" if rep.ok
             else f"relation {list(_polys(rep.failing))} is not generated by the trivial relations"]
    return rep.ok, payload, lines


def cmd_grade(spec, args, order):
    gens = spec.g or _need_F(spec)
    k = args.grade or spec.params.get("grade") or len(gens)
    cert = grade_at_least(gens, k, order=order)
    kron = cert.kronecker
    payload = {"ideal": _polys(gens), "bound": k, "holds": cert.ok,
               "kronecker": {"variables": list(kron.ring.variables), "forms": _polys(kron.forms)},
               "failed_at": cert.evidence.failed_at,
               "witness": None if cert.witness is None else str(cert.witness)}
    lines = [f"Gr >= {k}: {'yes' if cert.ok else 'no'} (Kronecker sequence of length {k})"]
    if not cert.ok:
        lines.append(f"zero-divisor witness {cert.witness}")
    return cert.ok, payload, lines


def cmd_secant(spec, args, order):
    F = _need_F(spec)
    rep = is_completely_secant(F, order=order)
    payload = {"sequence": _polys(F), "completely_secant": rep.ok, "method": rep.method}
    if rep.grade is not None:
        payload["kronecker_forms"] = _polys(rep.grade.kronecker.forms)
        payload["witness"] = None if rep.grade.witness is None else str(rep.grade.witness)
    return rep.ok, payload, [f"completely secant: {'yes' if rep.ok else 'no'} ({rep.method})"]


def cmd_annihilators(spec, args, order):
    F = _need_F(spec)
    try:
        P = finiteness_basis(F, order)
    except NotDetectedFinite as e:
        return False, {"finite": False, "reason": str(e), "variable": e.variable}, [f"not detected finite: {e}"]
    lemma = regular_sequence_from_finiteness(F, order, P)
    payload = {"finite": True, "generators": _polys(P.generator_polys()),
               "matrices": [[[encode_scalar(a) for a in row] for row in M] for M in P.matrices],
               "annihilators": annihilators_to_list(lemma.witnesses, spec.ring),
               "regular": lemma.certificate.ok}
    lines = [f"finite with {P.rank} module generators"]
    lines += [f"{spec.ring.variables[w.variable]}: {w.polynomial}" for w in lemma.witnesses]
    return lemma.certificate.ok, payload, lines


def cmd_jacobian(spec, args, order):
    F = _need_F(spec)
    try:
        rep = jacobian_criterion(F, order)
    except UnsupportedBase as e:
        raise InputError(str(e)) from None
    payload = {"invertible": rep.ok, "determinant": str(rep.determinant), "reason": rep.reason,
               "inverse": None if rep.inverse is None else str(rep.inverse),
               "inverse_cofactors": None if rep.inverse_cofactors is None else _polys(rep.inverse_cofactors)}
    return rep.ok, payload, [f"Jacobian determinant {rep.determinant}: {rep.reason}"]


def cmd_rewrite(spec, args, order):
    F = _need_F(spec)
    u, h = spec.u, spec.h
    if h is None or len(u) != len(F):
        raise InputError("rewrite needs h and cofactors u1..us matching f1..fs")
    ideals = _ideals(spec, args)
    if not ideals:
        raise InputError("rewrite needs at least one ideal (--ideal or 'ideal = ...')")
    groups, ok, lines = [], True, []
    for a in ideals:
        try:
            w = rewrite_with_ideal_coefficients(h, u, F, a)
        except ValueError as e:
            if not isinstance(e, (NotARelationModA, NotTriviallyGenerated)):
                raise InputError(str(e)) from None
            ok = False
            groups.append({"ideal": encode_scalar(a.generator), "ok": False, "error": type(e).__name__,
                           "reason": str(e)})
            lines.append(f"ideal {a}: {type(e).__name__}: {e}")
            continue
        groups.append({"ideal": encode_scalar(a.generator), "ok": True, "witness": witness_to_dict(w)})
        lines.append(f"ideal {a}: v = ({', '.join(_polys(w.v))})")
    return ok, {"rewrites": groups}, lines


def cmd_inclusion(spec, args, order):
    F = _need_F(spec)
    ideals = _ideals(spec, args)
    if not ideals:
        raise InputError("inclusion needs at least one ideal (--ideal or 'ideal = ...')")
    bound = args.max_degree if args.max_degree is not None else spec.params.get("max_degree", 4)
    groups, ok, lines = [], True, []
    for a in ideals:
        rep = check_flatness_inclusion(F, a, bound)
        ok = ok and rep.ok
        groups.append({"ideal": encode_scalar(a.generator), "degree_bound": bound, "ok": rep.ok,
                       "failure": None if rep.failure is None else str(rep.failure),
                       "witnesses": [witness_to_dict(w) for w in rep.witnesses]})
        lines.append(f"ideal {a}, degree <= {bound}: {len(rep.witnesses)} elements rewritten"
                     + ("" if rep.ok else f", failed at {rep.failure}"))
    return ok, {"inclusions": groups}, lines


def cmd_certify(spec, args, order):
    F = _need_F(spec)
    bound = args.max_degree if args.max_degree is not None else spec.params.get("max_degree", 3)
    try:
        cert = certify_de_smit_lenstra(F, _ideals(spec, args), degree_bound=bound, order=order)
    except NotDetectedFinite as e:
        return False, {"certified": False, "error": "NotDetectedFinite", "reason": str(e),
                       "variable": e.variable}, [f"finiteness not detected (theorem not applicable): {e}"]
    except NonUnitDivisor as e:
        return False, {"certified": False, "error": "NonUnitDivisor", "reason": str(e)}, [str(e)]
    except ValueError as e:
        raise InputError(str(e)) from None
    doc = certificate_to_dict(cert)
    ok = cert.completely_secant and all(i.ok for i in cert.inclusions)
    S = cert.structure
    lines = [f"finite: {S.generators} module generators",
             f"annihilators: {', '.join(doc['completely_secant']['sequence'])}",
             f"module structure over {spec.base}: " + (
                 f"rank {S.rank}" if S.rank is not None else
                 "locally free with ranks " + ", ".join(f"{f.rank} at {f.prime}" for f in S.factors))]
    return ok, doc, lines


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="secant", description="Regular sequences, grade and flatness certificates.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", help="problem file (a flatcert/1 JSON file for 'verify'); '-' reads stdin")
    parser.add_argument("--order", choices=("lex", "grevlex"))
    parser.add_argument("--ideal", action="append", metavar="INT", help="base-ring ideal (repeatable)")
    parser.add_argument("--max-degree", type=int, metavar="N")
    parser.add_argument("--grade", type=int, metavar="K")
    parser.add_argument("--json", action="store_true", help="write JSON to stdout")
    parser.add_argument("--explain", action="store_true", help="human-readable account on stderr")
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text(encoding="utf-8")
    except OSError as e:
        print(f"secant: cannot read {args.file}: {e.strerror}", file=sys.stderr)
        return 2
    if args.max_degree is not None and args.max_degree < 0:
        print("secant: --max-degree must be nonnegative", file=sys.stderr)
        return 2
    if args.grade is not None and args.grade < 1:
        print("secant: --grade must be >= 1", file=sys.stderr)
        return 2
    if args.command == "verify":
        return _verify(text, args)
    try:
        spec = parse_problem(text)
        order = order_from_name(args.order) if args.order else spec.monomial_order
        handler = globals()["cmd_" + args.command.replace("-", "_")]
        ok, payload, lines = handler(spec, args, order)
    except (ProblemError, InputError, ParseError, RingError) as e:
        print(f"secant: {args.file}: {e}", file=sys.stderr)
        return 2
    if "schema" not in payload:
        payload = {"schema": SCHEMA, "command": args.command, "ring": str(spec.base),
                   "variables": list(spec.ring.variables), "ok": ok, **payload}
    _emit(payload, lines, ok, args)
    return 0 if ok else 1


def _verify(text: str, args) -> int:
    try:
        doc = json.loads(text)
        if not isinstance(doc, dict):
            raise ValueError("top level must be an object")
    except ValueError as e:
        print(f"secant: {args.file}: not a JSON certificate: {e}", file=sys.stderr)
        return 2
    rep = verify_certificate(doc)
    payload = {"schema": SCHEMA, "command": "verify", "ok": rep.ok,
               "items": [{"item": n, "ok": ok, "detail": d} for n, ok, d in rep.items]}
    fail = rep.first_failure
    lines = [f"{len(rep.items)} items checked"] + ([f"first failure: {fail[0]}: {fail[1]}"] if fail else [])
    _emit(payload, lines, rep.ok, args)
    return 0 if rep.ok else 1


def _emit(payload, lines, ok, args):
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        print(f"{args.command}: {'ok' if ok else 'failed'}")
    if args.explain:
        for line in lines:
            print(line, file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
