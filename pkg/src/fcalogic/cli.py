"""Command-line surface.

Exit codes: 0 = success, 1 = domain failure (invalid formula/proof, failed
verification, engine error), 2 = usage error.  Failures print a JSON document
on stdout; all output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as fio
from .concepts import enumerate_concepts, protoconcept_algebra, semiconcept_algebra
from .context import FormalContext
from .dba import check_dba, is_fully_contextual, is_pure
from .errors import FcaError
from .formula import translate_rho, translate_tau
from .parser import parse, unparse
from .proofs import check_proof, parse_proof
from .properties import graded_characterization_check
from .semantics import (DEFAULT_BUDGET, ContextModel, find_countermodel,
                        satisfies, truth_set)
from .transforms import disjointify


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(json.dumps({"error": {"type": "usage", "message": message}}))
        raise SystemExit(2)


def _emit(payload: dict, code: int = 0) -> int:
    print(json.dumps(payload, indent=2, sort_keys=True))
    return code


def _load_context(path: str) -> FormalContext:
    return fio.load_cxt(path)


def _cmd_check(args) -> int:
    model = fio.load_model_json(args.model)
    formula = parse(args.formula)
    if args.world is not None:
        return _emit({"world": args.world,
                      "satisfies": satisfies(model, args.world, formula)})
    members = truth_set(model, formula)
    ordered = [w for w in model.universe(members.sort) if w in members.members]
    return _emit({"sort": members.sort, "truth_set": ordered})


def _cmd_valid(args) -> int:
    context = _load_context(args.context)
    formula = parse(args.formula)
    found = find_countermodel(context, formula, args.budget)
    if found is None:
        return _emit({"valid": True})
    model, world = found
    return _emit({"valid": False,
                  "countermodel": fio.model_to_dict(model),
                  "world": world}, 1)


def _cmd_lattice(args) -> int:
    context = _load_context(args.context)
    lattice = enumerate_concepts(context, args.kind)
    if args.out == "dot":
        sys.stdout.write(fio.lattice_to_dot(lattice))
        return 0
    return _emit(fio.lattice_to_dict(lattice))


def _axiom_block(alg) -> dict:
    report = check_dba(alg)
    return {name: ({"pass": True} if res.passed
                   else {"pass": False, "witness": list(res.witness)})
            for name, res in report.axioms.items()}


def _cmd_dba_verify(args) -> int:
    path = Path(args.source)
    out: dict = {}
    ok = True
    if path.suffix == ".cxt":
        context = _load_context(path)
        for label, alg in (("semiconcept", semiconcept_algebra(context)),
                           ("protoconcept", protoconcept_algebra(context))):
            block = {"axioms": _axiom_block(alg)}
            ok = ok and all(v["pass"] for v in block["axioms"].values())
            if args.pure:
                pure, witnesses = is_pure(alg)
                block["pure"] = pure
                if label == "semiconcept":
                    ok = ok and pure
            if args.fully_contextual:
                fc, _bad = is_fully_contextual(alg)
                block["fully_contextual"] = fc
                if label == "protoconcept":
                    ok = ok and fc
            out[label] = block
    else:
        alg = fio.load_algebra_json(path)
        out["axioms"] = _axiom_block(alg)
        ok = all(v["pass"] for v in out["axioms"].values())
        if args.pure:
            pure, _w = is_pure(alg)
            out["pure"] = pure
            ok = ok and pure
        if args.fully_contextual:
            fc, _bad = is_fully_contextual(alg)
            out["fully_contextual"] = fc
            ok = ok and fc
    return _emit(out, 0 if ok else 1)


def _cmd_props(args) -> int:
    context = _load_context(args.context)
    report = graded_characterization_check(context)
    rows = [{"clause": r.clause, "relation": r.relation,
             "formulas_hold": r.formulas_hold, "relational": r.relational,
             "agree": r.agree} for r in report.results]
    return _emit({"clauses": rows, "all_agree": report.all_agree},
                 0 if report.all_agree else 1)


def _cmd_proof(args) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    proof = parse_proof(text)
    verdict = check_proof(proof, args.system)
    if verdict.accepted:
        return _emit({"accepted": True, "lines": len(proof.lines)})
    n = verdict.first_failure
    return _emit({"accepted": False,
                  "first_failure": {"line": n,
                                    "reason": verdict.reports[n - 1].message}}, 1)


def _cmd_translate(args) -> int:
    formula = parse(args.formula)
    mapper = translate_rho if args.map == "rho" else translate_tau
    print(unparse(mapper(formula)))
    return 0


def _cmd_disjointify(args) -> int:
    model = fio.load_model_json(args.model)
    doubled, fold = disjointify(model)
    return _emit({"model": fio.model_to_dict(doubled),
                  "fold": {"objects": fold.f_s1, "attributes": fold.f_s2}})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcalogic",
                     description="Formal contexts and two-sorted modal logic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a formula on a model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("formula")
    p.add_argument("--world", default=None)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("valid", help="frame validity over a context")
    p.add_argument("context", help="context .cxt file")
    p.add_argument("formula")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_valid)

    p = sub.add_parser("lattice", help="enumerate a concept lattice")
    p.add_argument("context")
    p.add_argument("--kind", choices=("formal", "property", "object"),
                   default="formal")
    p.add_argument("--out", choices=("dot", "json"), default="json")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("dba-verify", help="audit double Boolean algebra axioms")
    p.add_argument("source", help="context .cxt file or algebra JSON file")
    p.add_argument("--pure", action="store_true")
    p.add_argument("--fully-contextual", dest="fully_contextual",
                   action="store_true")
    p.set_defaults(func=_cmd_dba_verify)

    p = sub.add_parser("props", help="graded relation characterization report")
    p.add_argument("context")
    p.set_defaults(func=_cmd_props)

    p = sub.add_parser("proof", help="check a Hilbert-style proof file")
    p.add_argument("file")
    p.add_argument("--system", choices=("KB", "KF", "BM"), required=True)
    p.set_defaults(func=_cmd_proof)

    p = sub.add_parser("translate", help="apply a formula translation")
    p.add_argument("formula")
    p.add_argument("--map", choices=("rho", "tau"), required=True)
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("disjointify", help="disjoint-copy construction")
    p.add_argument("model", help="model JSON file")
    p.set_defaults(func=_cmd_disjointify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FcaError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__,
                                    "message": str(exc)}}))
        return 1
    except OSError as exc:
        print(json.dumps({"error": {"type": "io", "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
