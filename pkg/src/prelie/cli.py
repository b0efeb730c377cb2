"""Command-line interface.

One binary, subcommand style.  Reports are single JSON documents on
stdout with stable key order (the `search` command emits one JSON line
per solution followed by a summary line); human-readable summaries go to
stderr.  Exit codes: 0 pass/success, 1 checked-and-failed, 2 input
error, 3 budget or resource error.  The environment variable
PRELIE_BUDGET overrides the default search budget; --field re-reads a
field-generic bundle over another scalar field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import brackets, deformation, nsprelie, opcohomology, reynolds, search
from .algebra import check_morphism, check_prelie, check_representation
from .bundle import (
    algebra_to_json,
    matrix_to_json,
    nsprelie_to_json,
    parse_bundle,
    reynolds_data_to_json,
)
from .cochain import Cochain, check_two_cocycle, cohomology
from .errors import (
    BudgetExceededError,
    FieldMismatchError,
    InfiniteFieldError,
    IoError,
    NoUnitError,
    NotAdmissibleError,
    NotCocycleError,
    SchemaError,
    ShapeError,
    SingularError,
    UnverifiedError,
)
from .scalars import field_name, scalar_to_str

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _violations_json(report, limit=50):
    out = []
    for where, residual in report.violations[:limit]:
        at = [w + 1 if isinstance(w, int) else w for w in where]
        out.append({"at": at, "residual": [scalar_to_str(x) for x in residual]})
    return out


def _report_json(report):
    doc = {"ok": report.ok, "violations": _violations_json(report)}
    if report.parts:
        doc["parts"] = {name: {"ok": part.ok, "violations": _violations_json(part)}
                        for name, part in report.parts.items()}
    return doc


def _emit(doc, ok):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    sys.stderr.write(("PASS" if ok else "FAIL") + f": {doc.get('command')}\n")
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# check subcommands


def _cmd_check(args) -> int:
    bundle = parse_bundle(args.bundle, args.field)
    what = args.what
    doc = {"command": f"check {what}", "field": field_name(bundle.field)}

    if what == "prelie":
        g_json = bundle.raw.get("algebra")
        if g_json is None:
            raise SchemaError("/algebra", "missing required section")
        # check the raw tensor rather than the validating constructor
        from .bundle import _dim, _parse_scalar, _want

        dim = _dim(g_json, "dim", "/algebra")
        z = bundle.field.zero
        tensor = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
        for pos, item in enumerate(_want(g_json, "product", list, "/algebra")):
            ipath = f"/algebra/product/{pos}"
            i = _want(item, "i", int, ipath) - 1
            j = _want(item, "j", int, ipath) - 1
            k = _want(item, "k", int, ipath) - 1
            if not all(0 <= t < dim for t in (i, j, k)):
                raise SchemaError(ipath, "index out of range")
            tensor[i][j][k] = _parse_scalar(bundle.field,
                                            _want(item, "c", None, ipath),
                                            f"{ipath}/c")
        report = check_prelie(bundle.field, tensor)
    elif what == "rep":
        # parse without the constructor's validation: this IS the validation
        from .bundle import representation_from_json

        if "representation" not in bundle.raw:
            raise SchemaError("/representation", "missing required section")
        rep = representation_from_json(bundle.field, bundle.raw["representation"],
                                       bundle.algebra(), check=False)
        report = check_representation(rep.algebra, rep.dim_v, rep.L, rep.R)
    elif what == "cocycle":
        report = check_two_cocycle(bundle.algebra(), bundle.representation(),
                                   bundle.cocycle())
    elif what == "reynolds":
        report = reynolds.check_rcw_reynolds(bundle.algebra(), bundle.representation(),
                                             bundle.cocycle(), bundle.operator())
    elif what == "weighted":
        report = reynolds.check_weighted_reynolds(bundle.algebra(),
                                                  bundle.matrix("operatorK"),
                                                  bundle.weight())
    elif what == "d-reynolds":
        report = reynolds.check_d_reynolds(bundle.algebra(), bundle.matrix("operatorD"),
                                           bundle.matrix("operatorK"))
    elif what == "nijenhuis":
        report = nsprelie.check_nijenhuis(bundle.algebra(), bundle.matrix("operatorN"))
    elif what == "ns":
        ns_json = bundle.raw.get("nsprelie")
        if ns_json is None:
            raise SchemaError("/nsprelie", "missing required section")
        from .bundle import _dim, _ns_tensor_from_json, _want

        dim = _dim(ns_json, "dim", "/nsprelie")
        tensors = [_ns_tensor_from_json(bundle.field, _want(ns_json, key, dict, "/nsprelie"),
                                        dim, f"/nsprelie/{key}")
                   for key in ("tri", "trl", "circ")]
        report = nsprelie.check_ns_prelie(bundle.field, *tensors)
    elif what == "morphism":
        a = bundle.algebra()
        b = bundle.algebra2() if "algebra2" in bundle.raw else a
        report = check_morphism(a, b, bundle.matrix("map"))
    elif what == "mc":
        report = brackets.check_maurer_cartan(bundle.algebra(), bundle.representation(),
                                              bundle.cocycle(), bundle.operator())
    elif what == "twisted-mc":
        data = bundle.reynolds_data()
        report = brackets.check_twisted_mc(data, bundle.matrix("operatorKprime"))
    elif what == "linear-deform":
        data = bundle.reynolds_data()
        report = deformation.check_linear_deformation(data, bundle.matrix("operatorK1"))
    elif what == "formal-deform":
        data = bundle.reynolds_data()
        series = deformation.DeformationSeries(data, tuple(bundle.series()))
        report = deformation.check_formal_deformation(series)
        doc["order"] = series.order
        doc["checked_orders"] = [0, 3 * series.order]
    elif what == "nijenhuis-element":
        data = bundle.reynolds_data()
        report = deformation.check_nijenhuis_element(data, bundle.element())
    else:  # pragma: no cover - argparse restricts choices
        raise SchemaError("/", f"unknown checker {what}")

    doc.update(_report_json(report))
    return _emit(doc, report.ok)


# ---------------------------------------------------------------------------
# cohomology


def _cmd_cohomology(args) -> int:
    source = args.bundle if args.bundle is not None else args.operator
    if source is None:
        raise SchemaError("/", "a bundle path is required")
    of = args.of or ("operator" if args.operator is not None else None)
    if of is None:
        raise SchemaError("/", "--of algebra|operator is required")
    bundle = parse_bundle(source, args.field)
    if of == "algebra":
        report = cohomology(bundle.algebra(), bundle.representation(), args.degree)
        doc = {"command": "cohomology", "of": "algebra", "degree": args.degree,
               "dimZ": report.dim_z, "dimB": report.dim_b, "dimH": report.dim_h}
    else:
        data = bundle.reynolds_data()
        report = opcohomology.operator_cohomology(data, args.degree)
        doc = {"command": "cohomology", "of": "operator", "degree": args.degree,
               "dimZ": report.dim_z, "dimB": report.dim_b, "dimH": report.dim_h,
               "operator": report.operator_hash}
    return _emit(doc, True)


# ---------------------------------------------------------------------------
# construct


def _cmd_construct(args) -> int:
    bundle = parse_bundle(args.bundle, args.field)
    what = args.what
    doc = {"command": f"construct {what}", "field": field_name(bundle.field)}

    if what == "semidirect":
        sd = reynolds.semidirect(bundle.algebra(), bundle.representation(),
                                 bundle.cocycle())
        doc["result"] = algebra_to_json(sd.algebra)
    elif what == "induced":
        doc["result"] = algebra_to_json(reynolds.induced_product(bundle.reynolds_data()))
    elif what == "star":
        doc["result"] = algebra_to_json(
            reynolds.star_product(bundle.algebra(), bundle.matrix("operatorK"),
                                  bundle.weight()))
    elif what == "gauge":
        data = bundle.reynolds_data()
        gauged = reynolds.gauge_transform(data.algebra, data.rep, data.cocycle,
                                          data.operator, bundle.named_cochain("B"))
        doc["result"] = matrix_to_json(gauged)
    elif what == "shift":
        data = bundle.reynolds_data()
        shifted = reynolds.shift_operator(data.algebra, data.rep, data.cocycle,
                                          data.operator, bundle.named_cochain("h"))
        doc["result"] = matrix_to_json(shifted)
    elif what == "ns-from-nijenhuis":
        ns = nsprelie.ns_from_nijenhuis(bundle.algebra(), bundle.matrix("operatorN"))
        doc["result"] = nsprelie_to_json(ns)
    elif what == "ns-from-reynolds":
        doc["result"] = nsprelie_to_json(nsprelie.ns_from_reynolds(bundle.reynolds_data()))
    elif what == "reynolds-from-ns":
        data = nsprelie.reynolds_from_ns(bundle.nsprelie())
        doc["result"] = reynolds_data_to_json(data)
    elif what == "compatible-ns":
        ns = nsprelie.compatible_ns_from_invertible(bundle.reynolds_data())
        doc["result"] = nsprelie_to_json(ns)
    elif what == "deformed-product":
        doc["result"] = algebra_to_json(
            nsprelie.deformed_product(bundle.algebra(), bundle.matrix("operatorN")))
    else:  # pragma: no cover
        raise SchemaError("/", f"unknown construction {what}")
    return _emit(doc, True)


# ---------------------------------------------------------------------------
# search


def _parse_fix(text: str) -> dict:
    fixed = {}
    if not text:
        return fixed
    for clause in text.split(";"):
        clause = clause.strip()
        if not clause:
            continue
        pos, _, value = clause.partition("=")
        try:
            r, c = (int(t) for t in pos.split(","))
        except ValueError:
            raise SchemaError("/fix", f"bad clause {clause!r}") from None
        fixed[(r - 1, c - 1)] = value.strip()
    return fixed


def _cmd_search(args) -> int:
    bundle = parse_bundle(args.bundle, args.field)
    field = bundle.field
    if args.domain:
        from .scalars import field_by_name

        try:
            dom_field = field_by_name(args.domain)
        except ValueError:
            dom_field = None
        if dom_field is not None:
            if dom_field != field:
                raise FieldMismatchError(
                    f"--domain {args.domain} conflicts with bundle field "
                    f"{field_name(field)}")
            domain = tuple(field.elements())
        else:
            domain = tuple(field.parse(t.strip()) for t in args.domain.split(","))
    else:
        domain = tuple(field.elements())

    rows, cols = (int(t) for t in args.shape.lower().split("x"))
    fixed = {pos: field.parse(v) for pos, v in _parse_fix(args.fix or "").items()}

    if args.predicate == "rcw-reynolds":
        spec_bundle = {"algebra": bundle.algebra(), "rep": bundle.representation(),
                       "cocycle": bundle.cocycle()}
    elif args.predicate == "weighted-reynolds":
        spec_bundle = {"algebra": bundle.algebra(), "weight": bundle.weight()}
    elif args.predicate == "nijenhuis":
        spec_bundle = {"algebra": bundle.algebra()}
    elif args.predicate == "d-reynolds":
        spec_bundle = {"algebra": bundle.algebra(),
                       "operatorD": bundle.matrix("operatorD")}
    elif args.predicate == "nijenhuis-element":
        spec_bundle = {"data": bundle.reynolds_data()}
    else:
        raise SchemaError("/predicate", f"unknown predicate {args.predicate!r}")

    budget = args.budget or int(os.environ.get("PRELIE_BUDGET", search.DEFAULT_BUDGET))
    spec = search.SearchSpec(args.predicate, spec_bundle, (rows, cols), domain,
                             fixed=fixed, budget=budget)
    result = search.exhaustive_search(spec, field, workers=args.workers)
    for sol in result.solutions:
        sys.stdout.write(json.dumps({"solution": matrix_to_json(sol)}) + "\n")
    summary = {"command": "search", "predicate": args.predicate,
               "shape": [rows, cols], "domain_size": len(domain),
               "checked": result.count_checked, "solutions": result.count_solutions}
    sys.stdout.write(json.dumps(summary) + "\n")
    sys.stderr.write(f"search: {result.count_solutions} solutions / "
                     f"{result.count_checked} candidates\n")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# deform group


def _cmd_deform(args) -> int:
    bundle = parse_bundle(args.bundle, args.field)
    data = bundle.reynolds_data()
    if args.action == "check":
        if args.series:
            series_doc = parse_bundle(args.series, args.field or
                                      field_name(bundle.field))
            coefficients = series_doc.series()
        else:
            coefficients = bundle.series()
        if args.order is not None:
            coefficients = coefficients[:args.order + 1]
        series = deformation.DeformationSeries(data, tuple(coefficients))
        report = deformation.check_formal_deformation(series)
        doc = {"command": "deform check", "order": series.order,
               "checked_orders": [0, 3 * series.order]}
        doc.update(_report_json(report))
        return _emit(doc, report.ok)
    if args.action == "nijenhuis":
        elements = deformation.nijenhuis_elements(data)
        doc = {"command": "deform nijenhuis",
               "count": len(elements),
               "elements": [[scalar_to_str(c) for c in x] for x in elements]}
        return _emit(doc, True)
    if args.action == "rigidity":
        report = deformation.rigidity_probe(data)
        doc = {"command": "deform rigidity",
               "cocycles": report.cocycle_count,
               "nijenhuis_elements": report.nijenhuis_count,
               "coboundary_image": report.image_count,
               "criterion_holds": report.criterion_holds}
        return _emit(doc, report.criterion_holds)
    raise SchemaError("/", f"unknown deform action {args.action}")  # pragma: no cover


# ---------------------------------------------------------------------------
# bracket consistency commands


def _cmd_mc_check(args) -> int:
    bundle = parse_bundle(args.bundle, args.field)
    report = brackets.check_maurer_cartan(bundle.algebra(), bundle.representation(),
                                          bundle.cocycle(), bundle.operator())
    doc = {"command": "mc-check", "field": field_name(bundle.field)}
    doc.update(_report_json(report))
    return _emit(doc, report.ok)


def _cmd_dk_consistency(args) -> int:
    bundle = parse_bundle(args.bundle, args.field)
    data = bundle.reynolds_data()
    n = args.degree
    m, dim_g = data.rep.dim_v, data.algebra.dim
    from .cochain import cochain_keys
    from .linalg import basis_vec

    max_residual = "0"
    ok = True
    for key in cochain_keys(m, n):
        for t in range(dim_g):
            f = Cochain.from_entries(data.field, n, m, dim_g,
                                     {key: basis_vec(data.field, dim_g, t)})
            dk = brackets.d_K(data, f)
            pd = opcohomology.operator_coboundary(data, f)
            expected = pd if (n - 1) % 2 == 0 else -pd
            diff = dk - expected
            if not diff.is_zero():
                ok = False
                for v in diff.values:
                    for x in v:
                        if x:
                            max_residual = scalar_to_str(x)
                            break
                    if max_residual != "0":
                        break
            if not ok:
                break
        if not ok:
            break
    doc = {"command": "dk-consistency", "degree": n, "max_residual": max_residual,
           "ok": ok}
    return _emit(doc, ok)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prelie",
        description="Exact checkers, constructions, cohomology, deformations and "
                    "searches for pre-Lie algebras with cocycle-weighted Reynolds "
                    "operators.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the bundle's scalar field "
                                        "(q, f2, f3, f5, f7, ...)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run an axiom or identity checker",
                             parents=[common])
    p_check.add_argument("what", choices=[
        "prelie", "rep", "cocycle", "reynolds", "weighted", "d-reynolds",
        "nijenhuis", "ns", "morphism", "mc", "twisted-mc", "linear-deform",
        "formal-deform", "nijenhuis-element"])
    p_check.add_argument("bundle")
    p_check.set_defaults(func=_cmd_check)

    p_coh = sub.add_parser("cohomology", help="exact cohomology dimensions", parents=[common])
    p_coh.add_argument("bundle", nargs="?")
    p_coh.add_argument("--of", choices=["algebra", "operator"])
    p_coh.add_argument("--operator", metavar="BUNDLE",
                       help="shorthand for --of operator BUNDLE")
    p_coh.add_argument("--degree", type=int, required=True)
    p_coh.set_defaults(func=_cmd_cohomology)

    p_con = sub.add_parser("construct", help="build a derived object and print it", parents=[common])
    p_con.add_argument("what", choices=[
        "semidirect", "induced", "star", "gauge", "shift", "ns-from-nijenhuis",
        "ns-from-reynolds", "reynolds-from-ns", "compatible-ns", "deformed-product"])
    p_con.add_argument("bundle")
    p_con.set_defaults(func=_cmd_construct)

    p_search = sub.add_parser("search", help="exhaustive search over a finite domain", parents=[common])
    p_search.add_argument("--predicate", required=True)
    p_search.add_argument("--bundle", required=True)
    p_search.add_argument("--domain", help="field name (f2, ...) or a comma list "
                                           "of scalars")
    p_search.add_argument("--shape", required=True, help="ROWSxCOLS, e.g. 3x3")
    p_search.add_argument("--fix", help="fixed entries: \"r,c=v;r,c=v\" (1-based)")
    p_search.add_argument("--workers", type=int, default=1)
    p_search.add_argument("--budget", type=int)
    p_search.set_defaults(func=_cmd_search)

    p_def = sub.add_parser("deform", help="deformation-theoretic commands", parents=[common])
    p_def.add_argument("action", choices=["check", "nijenhuis", "rigidity"])
    p_def.add_argument("--bundle", required=True)
    p_def.add_argument("--series", help="bundle file providing /series")
    p_def.add_argument("--order", type=int)
    p_def.add_argument("--enumerate", action="store_true",
                       help="accepted for symmetry; enumeration is the default")
    p_def.set_defaults(func=_cmd_deform)

    p_mc = sub.add_parser("mc-check", help="Maurer-Cartan test for the bundle operator", parents=[common])
    p_mc.add_argument("bundle")
    p_mc.set_defaults(func=_cmd_mc_check)

    p_dk = sub.add_parser("dk-consistency",
                          help="bracket differential vs. cohomology differential",
                          parents=[common])
    p_dk.add_argument("bundle")
    p_dk.add_argument("--degree", type=int, required=True)
    p_dk.set_defaults(func=_cmd_dk_consistency)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        sys.stdout.write(json.dumps({"error": "budget", "message": str(exc)}) + "\n")
        sys.stderr.write(f"budget error: {exc}\n")
        return EXIT_BUDGET
    except (SchemaError, IoError, FieldMismatchError, ShapeError, SingularError,
            NoUnitError, NotCocycleError, NotAdmissibleError, InfiniteFieldError,
            UnverifiedError) as exc:
        sys.stdout.write(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}) + "\n")
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
