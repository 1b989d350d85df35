"""Batch front end: parse specs, run constructions and audits, emit reports.

Every verb maps to one operation or a short pipeline; reports are
deterministic given inputs and caps (the timing section is excluded from
that guarantee). Exit status is 0 only when the outcome is ok and every
audit in the payload passed.

Carrier SPEC grammar: chain:N | bool | bool:K | diag:N:K | prod:N1,N2,...
or a path to an algebra JSON file. Group specs are factor lists like "2"
or "2x3". Term syntax: (oplus t t), (neg t), (odot t t), (prod t t),
(scal p/q t), (var i) or x1, x2, ..., and the constants 0 and 1.
"""

import argparse
import json
import os
import sys
import time

from . import catalog
from .algebra import Kind, interval_algebra
from .amalgam import amalgamate_mv, amalgamate_pmv, inclusion_hom
from .axioms import check_axioms
from .errors import MvTensorError, UsageError
from .functions import PointFunction
from .groups import UnitGroup, gamma, lambda_, tensor_fu_ring
from .homs import check_bimorphism, extend_hom
from .rationals import unit
from .serialize import (
    algebra_from_payload,
    algebra_to_payload,
    dumps_payload,
    element_to_payload,
    group_to_payload,
    load_algebra,
    tower_element_from_payload,
    tower_element_to_payload,
)
from .spectra import iso_check, spectral_decomposition
from .tensor import associativity_witness, commutativity_witness, tensor
from .terms import (
    Signature,
    eval_term,
    free_pmv_evidence,
    grid_equal,
    parse_term,
    signature_for,
    term_function_on_grid,
)
from .tower import build_tower, check_fixed_point, check_level_identities, check_product_laws, lift_hom


def _load_carrier(spec: str, cap: int):
    if spec.split(":", 1)[0] in ("chain", "bool", "diag", "prod"):
        return catalog.from_spec(spec, cap)
    if not os.path.exists(spec):
        raise UsageError(f"no such carrier spec or file: {spec!r}")
    return load_algebra(spec, cap)


def _parse_group(spec: str) -> UnitGroup:
    try:
        return UnitGroup(tuple(int(n) for n in spec.split("x")))
    except ValueError as exc:
        raise UsageError(f"bad group spec {spec!r}: {exc}") from None


def _parse_element(text: str, points) -> PointFunction:
    values = [unit(v.strip()) for v in text.split(",")]
    if len(values) != len(points):
        raise UsageError(f"element needs {len(points)} values, got {len(values)}")
    return PointFunction(points, tuple(values))


def _load_hom(path: str, source, target, cap: int):
    with open(path) as fh:
        obj = json.load(fh)
    from .serialize import element_from_payload

    images = obj.get("images")
    if not isinstance(images, list) or len(images) != len(source.generators):
        raise UsageError(f"hom file needs one image per source generator ({len(source.generators)})")
    gen_map = {
        g: element_from_payload(img, target.points, f"/images/{i}")
        for i, (g, img) in enumerate(zip(source.generators, images))
    }
    return extend_hom(source, target, gen_map)


# -- handlers (payload, audits_ok) --------------------------------------------


def _cmd_alg(args):
    if args.alg_verb == "chain":
        algebra = catalog.chain(args.order)
        return algebra_to_payload(algebra), True
    algebra = load_algebra(args.file, args.cap)
    if args.alg_verb == "generate":
        return algebra_to_payload(algebra), True
    if args.alg_verb == "check":
        report = check_axioms(algebra)
        return {"axioms": report.to_payload()}, report.ok
    if args.alg_verb == "spectrum":
        dec = spectral_decomposition(algebra)
        return (
            {
                "orders": list(dec.orders),
                "points": [f.point_label for f in dec.factors],
                "joint_injective": dec.joint_injective(),
            },
            dec.joint_injective(),
        )
    raise UsageError(f"unknown alg verb {args.alg_verb!r}")


def _cmd_interval(args):
    algebra = _load_carrier(args.file, args.cap)
    bound = _parse_element(args.element, algebra.points)
    sub = interval_algebra(algebra, bound)
    payload = algebra_to_payload(sub, include_carrier=True)
    if sub.tables is not None:
        payload["tables"] = {
            "neg": list(sub.tables.neg),
            "oplus": [list(r) for r in sub.tables.oplus],
            "zero": sub.tables.zero_index,
            "one": sub.tables.one_index,
        }
    return payload, True


def _cmd_tensor(args):
    specs = args.specs
    if specs and specs[0] == "assoc":
        if len(specs) != 4:
            raise UsageError("tensor assoc needs three carrier specs")
        a, b, c = (_load_carrier(s, args.cap) for s in specs[1:])
        w = associativity_witness(a, b, c, args.cap)
        payload = {
            "carriers_equal": w.carriers_equal,
            "size": len(w.triple_closure),
            "points": list(w.triple_closure.points.labels),
        }
        return payload, w.carriers_equal
    if len(specs) != 2:
        raise UsageError("tensor needs two carrier specs (or 'assoc' and three)")
    a, b = (_load_carrier(s, args.cap) for s in specs)
    t = tensor(a, b, args.cap)
    verdict = check_bimorphism(t.bimorphism)
    swap = commutativity_witness(a, b, args.cap)
    dec = spectral_decomposition(t.algebra)
    payload = {
        "algebra": algebra_to_payload(t.algebra),
        "bimorphism_ok": verdict.ok,
        "commutativity_ok": swap.is_bijective(),
        "spectrum": list(dec.orders),
    }
    if len(dec.orders) == 1:
        match = iso_check(t.algebra, catalog.chain(dec.orders[0]))
        payload["isomorphic_chain"] = dec.orders[0] if match is not None else None
    return payload, verdict.ok and swap.is_bijective()


def _cmd_tower(args):
    base = _load_carrier(args.spec, args.cap)
    tw = build_tower(base, args.levels, args.cap)
    payload = {"level_sizes": [len(tw.level(n)) for n in range(1, tw.max_level + 1)]}
    ok = True
    if args.check_identities:
        report = check_level_identities(tw)
        payload["identities"] = report.to_payload()
        ok = ok and report.ok
    if args.check_pmv:
        report = check_product_laws(tw)
        payload["product_laws"] = report.to_payload()
        ok = ok and report.ok
    return payload, ok


def _cmd_tpmv(args):
    base = _load_carrier(args.file, args.cap)
    x_obj = json.loads(args.x)
    y_obj = json.loads(args.y)
    levels = args.levels or (int(x_obj.get("level", 1)) + int(y_obj.get("level", 1)))
    tw = build_tower(base, levels, args.cap)
    x = tower_element_from_payload(x_obj, tw, "/x")
    y = tower_element_from_payload(y_obj, tw, "/y")
    p = tw.product(x, y)
    return (
        {
            "product": tower_element_to_payload(p),
            "canonical": tower_element_to_payload(tw.canonical(p)),
        },
        True,
    )


def _cmd_lift(args):
    base = _load_carrier(args.file, args.cap)
    with open(args.homfile) as fh:
        obj = json.load(fh)
    target = algebra_from_payload(obj.get("target"), args.cap, "/target")
    tw = build_tower(base, args.levels, args.cap)

    from .serialize import element_from_payload

    images = obj.get("images", [])
    if len(images) != len(base.generators):
        raise UsageError("hom file needs one image per base generator")
    gen_map = {
        g: element_from_payload(img, target.points, f"/images/{i}")
        for i, (g, img) in enumerate(zip(base.generators, images))
    }
    f = extend_hom(base, target.mv_reduct(), gen_map)
    f = type(f)(base, target, dict(f.mapping))
    lifted = lift_hom(tw, target, f)
    triangle = all(lifted(tw.element(1, x)).values == f(x).values for x in base.elements)
    return (
        {
            "levels": tw.max_level,
            "level_sizes": [len(tw.level(n)) for n in range(1, tw.max_level + 1)],
            "triangle_ok": triangle,
        },
        triangle,
    )


def _cmd_amalgamate(args):
    z = _load_carrier(args.zfile, args.cap)
    a = _load_carrier(args.afile, args.cap)
    b = _load_carrier(args.bfile, args.cap)
    z_a = _load_hom(args.za, z, a, args.cap) if args.za else inclusion_hom(z, a)
    z_b = _load_hom(args.zb, z, b, args.cap) if args.zb else inclusion_hom(z, b)
    mv_only = all(not alg.signature.has_product and not alg.signature.has_scalars for alg in (z, a, b))
    if mv_only:
        res = amalgamate_mv(z, a, b, z_a, z_b, args.cap)
    else:
        res = amalgamate_pmv(z, a, b, z_a, z_b, args.depth, args.cap)
    payload = {
        "size": len(res.algebra),
        "points": list(res.algebra.points.labels),
        "left_injective": res.left_leg.is_injective(),
        "right_injective": res.right_leg.is_injective(),
        "square_commutes": all(
            res.left_leg(z_a(f)).values == res.right_leg(z_b(f)).values for f in z.elements
        ),
        "spectrum": list(spectral_decomposition(res.algebra.mv_reduct()).orders),
    }
    ok = payload["left_injective"] and payload["right_injective"] and payload["square_commutes"]
    return payload, ok


def _cmd_gamma(args):
    group = _parse_group(args.groupspec)
    return {"algebra": algebra_to_payload(gamma(group))}, True


def _cmd_lambda(args):
    algebra = _load_carrier(args.file, args.cap)
    pres = lambda_(algebra)
    return (
        {
            "group": group_to_payload(pres.group),
            "roundtrip_ok": pres.witness.is_bijective(),
        },
        pres.witness.is_bijective(),
    )


def _cmd_fu_ring(args):
    group = _parse_group(args.groupspec)
    ring = tensor_fu_ring(group, args.levels, args.cap)
    ok = all(w.is_bijective() for w in ring.level_witnesses) and all(
        e.is_injective() for e in ring.embeddings
    )
    return (
        {
            "factor_sequences": [list(f) for f in ring.factor_sequences],
            "level_isos_ok": all(w.is_bijective() for w in ring.level_witnesses),
            "embeddings_injective": all(e.is_injective() for e in ring.embeddings),
        },
        ok,
    )


def _cmd_term(args):
    sig = signature_for(args.sig)
    if args.term_verb == "eval":
        assignment = [unit(v) for v in args.assign.split(",")] if args.assign else []
        term = parse_term(args.expr, sig, len(assignment))
        value = eval_term(term, assignment)
        return {"value": [value.numerator, value.denominator]}, True
    if args.term_verb == "grid":
        term = parse_term(args.expr, sig, args.arity)
        f = term_function_on_grid(term, args.arity, args.denominator)
        return {"grid": element_to_payload(f)}, True
    if args.term_verb == "equal":
        t1 = parse_term(args.expr, sig, args.arity)
        t2 = parse_term(args.expr2, sig, args.arity)
        v = grid_equal(t1, t2, args.arity, args.denominator)
        payload = {"equal_on_grid": v.equal}
        if not v.equal:
            payload["witness"] = {
                "point": v.point,
                "left": [v.left.numerator, v.left.denominator],
                "right": [v.right.numerator, v.right.denominator],
            }
        return payload, True
    raise UsageError(f"unknown term verb {args.term_verb!r}")


def _cmd_free_evidence(args):
    ev = free_pmv_evidence(args.arity, args.denominator, args.cap, depth=args.depth)
    return ev.to_payload(), ev.ok


def _cmd_check_fixed_point(args):
    algebra = _load_carrier(args.file, args.cap)
    verdict = check_fixed_point(algebra, args.levels, args.cap)
    payload = {"holds": verdict.holds, "levels_checked": verdict.levels_checked}
    return payload, verdict.holds


_HANDLERS = {
    "alg": _cmd_alg,
    "interval": _cmd_interval,
    "tensor": _cmd_tensor,
    "tower": _cmd_tower,
    "tpmv": _cmd_tpmv,
    "lift": _cmd_lift,
    "amalgamate": _cmd_amalgamate,
    "gamma": _cmd_gamma,
    "lambda": _cmd_lambda,
    "fu-ring": _cmd_fu_ring,
    "term": _cmd_term,
    "free-evidence": _cmd_free_evidence,
    "fixed-point": _cmd_check_fixed_point,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvtensor",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--cap", type=int, default=20000, help="carrier size cap (default 20000)")
    parser.add_argument("--out", help="write the report JSON to this path")
    parser.add_argument("--json", action="store_true", help="print the machine-readable report")
    sub = parser.add_subparsers(dest="verb", required=True)

    alg = sub.add_parser("alg", help="construct and audit carriers")
    alg_sub = alg.add_subparsers(dest="alg_verb", required=True)
    p = alg_sub.add_parser("chain", help="the chain with the given denominator")
    p.add_argument("order", type=int)
    for name, hlp in (
        ("generate", "closure of the generators in FILE"),
        ("check", "axiom audit of the carrier in FILE"),
        ("spectrum", "spectral form of the carrier in FILE"),
    ):
        p = alg_sub.add_parser(name, help=hlp)
        p.add_argument("file")

    p = sub.add_parser("interval", help="interval algebra [0, ELEM] with materialized tables")
    p.add_argument("file")
    p.add_argument("element", help="comma-separated values in point order, e.g. 1/2,1/3")

    p = sub.add_parser("tensor", help="tensor of two carriers, or 'assoc' plus three")
    p.add_argument("specs", nargs="+")

    p = sub.add_parser("tower", help="iterated tensor powers of a carrier")
    p.add_argument("spec")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--check-identities", action="store_true",
                   help="audit the embedding/product identity battery")
    p.add_argument("--check-pmv", action="store_true",
                   help="audit the truncated-limit product laws")

    tpmv = sub.add_parser("tpmv", help="operations in the truncated limit")
    tpmv_sub = tpmv.add_subparsers(dest="tpmv_verb", required=True)
    p = tpmv_sub.add_parser("mul", help="product of two tower elements")
    p.add_argument("file")
    p.add_argument("x", help='JSON {"level": n, "value": {label: [num,den]}}')
    p.add_argument("y")
    p.add_argument("--levels", type=int, default=None)

    p = sub.add_parser("lift", help="extend a base hom multiplicatively to the tower")
    p.add_argument("file")
    p.add_argument("homfile", help='JSON {"target": <algebra>, "images": [...]}')
    p.add_argument("--levels", type=int, default=2)

    p = sub.add_parser("amalgamate", help="amalgamate A and B over Z")
    p.add_argument("zfile")
    p.add_argument("afile")
    p.add_argument("bfile")
    p.add_argument("--za", help="hom file Z -> A (default: value inclusion)")
    p.add_argument("--zb", help="hom file Z -> B (default: value inclusion)")
    p.add_argument("--depth", type=int, default=2, help="product/scalar closure depth")

    p = sub.add_parser("gamma", help="unit interval of a cyclic-product group")
    p.add_argument("groupspec", help='factors like "2" or "2x3"')

    p = sub.add_parser("lambda", help="group presentation of a carrier")
    p.add_argument("file")

    p = sub.add_parser("fu-ring", help="tensor tower transported to the group side")
    p.add_argument("groupspec")
    p.add_argument("--levels", type=int, default=3)

    term = sub.add_parser("term", help="term-language operations")
    term.add_argument("--sig", default="FMV", choices=[k.value for k in Kind])
    term_sub = term.add_subparsers(dest="term_verb", required=True)
    p = term_sub.add_parser("eval", help="evaluate a term at a rational assignment")
    p.add_argument("expr")
    p.add_argument("assign", nargs="?", default="", help="comma list, x1 first")
    p = term_sub.add_parser("grid", help="tabulate a term on the rational grid")
    p.add_argument("expr")
    p.add_argument("arity", type=int)
    p.add_argument("denominator", type=int)
    p = term_sub.add_parser("equal", help="grid equality probe for two terms")
    p.add_argument("expr")
    p.add_argument("expr2")
    p.add_argument("arity", type=int)
    p.add_argument("denominator", type=int)

    p = sub.add_parser("free-evidence", help="grid evidence for the free-object forms")
    p.add_argument("arity", type=int)
    p.add_argument("denominator", type=int)
    p.add_argument("--depth", type=int, default=3)

    p = sub.add_parser("fixed-point", help="tower collapse over a product-closed carrier")
    p.add_argument("file")
    p.add_argument("--levels", type=int, default=3)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.monotonic()
    command = list(argv) if argv is not None else sys.argv[1:]
    try:
        payload, audits_ok = _HANDLERS[args.verb](args)
        outcome = "ok"
    except UsageError as exc:
        payload, audits_ok, outcome = {"error": "UsageError", "message": str(exc)}, False, "error"
        print(f"usage error: {exc}", file=sys.stderr)
        _emit(args, command, outcome, payload, started)
        return 2
    except MvTensorError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        audits_ok, outcome = False, "error"
    report = _emit(args, command, outcome, payload, started)
    if not args.json and outcome == "ok":
        _summary(payload)
    elif not args.json:
        print(f"error: {payload.get('error')}: {payload.get('message')}", file=sys.stderr)
    return 0 if (outcome == "ok" and audits_ok) else 1


def _emit(args, command, outcome, payload, started):
    report = {
        "command": command,
        "outcome": outcome,
        "payload": payload,
        "timing": {"seconds": round(time.monotonic() - started, 6)},
    }
    text = dumps_payload(report)
    if args.json:
        print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
            fh.write("\n")
    return report


def _summary(payload):
    for key, value in payload.items():
        if isinstance(value, dict):
            print(f"{key}: ...")
        else:
            print(f"{key}: {value}")


if __name__ == "__main__":
    sys.exit(main())
