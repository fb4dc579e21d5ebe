"""Command-line surface: every command prints one JSON document to stdout.

Exit codes: 0 success, 1 corpus expectation failure, 2 input error,
3 timeout (smoothness deadline exceeded).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import (
    SCHEMA,
    certificate_json,
    fixed_locus_json,
    load_instance,
    render_point,
    run_corpus,
)
from .errors import GaloisScopeError, ParseError, SingularPoint
from .exactnum import cyclo_field
from .fixlocus import fixed_locus
from .galois import (
    certificate_from_automorphism,
    coordinate_points,
    count_certified_points,
    eigen_candidate_points,
    galois_at_point,
)
from .hypersurface import Hypersurface, is_smooth, verify_automorphism
from .parsing import parse_point, parse_polynomial, render_scalar
from .planecurves import classify_cyclic, group_closure, quotient_genus
from .projlin import projective_order

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3


def _emit(doc: dict, json_out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if json_out:
        Path(json_out).write_text(text + "\n")


def _load_surface(args) -> tuple:
    """(instance | None, Hypersurface): from a file or from --poly/--field."""
    if args.instance:
        inst = load_instance(args.instance)
        return inst, inst.surface
    if getattr(args, "poly", None):
        field = cyclo_field(args.field)
        F = parse_polynomial(args.poly, args.nvars, field)
        return None, Hypersurface(F.nvars - 2, F.degree, F)
    raise GaloisScopeError("an instance file or --poly is required")


def _witness(inst, X, name):
    if name not in inst.automorphisms:
        raise GaloisScopeError(f"automorphism {name!r} is not defined in the instance")
    w = verify_automorphism(X, inst.automorphisms[name])
    if w is None:
        raise GaloisScopeError(f"matrix {name!r} does not preserve the hypersurface")
    return w


def _resolve_point(inst, X, args):
    if args.point:
        if args.point.startswith("e") and args.point[1:].isdigit():
            i = int(args.point[1:])
            f = X.field
            return tuple(f.one if j == i else f.zero for j in range(X.n + 2))
        if inst is None or args.point not in inst.points:
            raise GaloisScopeError(f"point {args.point!r} is not defined")
        return inst.points[args.point]
    if args.coords:
        return parse_point(args.coords.split(","), X.field)
    raise GaloisScopeError("--point or --coords is required")


def cmd_check_smooth(args):
    inst, X = _load_surface(args)
    res = is_smooth(X, deadline=args.deadline, allow_large=True)
    _emit({
        "schema": SCHEMA,
        "command": "check-smooth",
        "status": res.status,
        "witness": render_point(res.witness) if res.witness else None,
    }, args.json_out)
    return EXIT_TIMEOUT if res.status == "timeout" else EXIT_OK


def cmd_verify_aut(args):
    inst, X = _load_surface(args)
    A = inst.automorphisms.get(args.aut)
    if A is None:
        raise GaloisScopeError(f"automorphism {args.aut!r} is not defined")
    w = verify_automorphism(X, A)
    _emit({
        "schema": SCHEMA,
        "command": "verify-aut",
        "automorphism": args.aut,
        "verified": w is not None,
        "order": w.order if w else projective_order(A),
        "scale": render_scalar(w.scale) if w else None,
    }, args.json_out)
    return EXIT_OK


def cmd_order(args):
    inst, X = _load_surface(args)
    A = inst.automorphisms.get(args.aut)
    if A is None:
        raise GaloisScopeError(f"automorphism {args.aut!r} is not defined")
    _emit({
        "schema": SCHEMA,
        "command": "order",
        "automorphism": args.aut,
        "order": projective_order(A),
    }, args.json_out)
    return EXIT_OK


def cmd_fix_locus(args):
    inst, X = _load_surface(args)
    w = _witness(inst, X, args.aut)
    rep = fixed_locus(X, w)
    _emit({
        "schema": SCHEMA,
        "command": "fix-locus",
        "automorphism": args.aut,
        "fixed_locus": fixed_locus_json(rep),
    }, args.json_out)
    return EXIT_OK


def cmd_galois_detect(args):
    inst, X = _load_surface(args)
    w = _witness(inst, X, args.aut)
    cert = certificate_from_automorphism(X, w)
    _emit({
        "schema": SCHEMA,
        "command": "galois-detect",
        "automorphism": args.aut,
        "certificate": certificate_json(cert),
    }, args.json_out)
    return EXIT_OK


def cmd_galois_at_point(args):
    inst, X = _load_surface(args)
    p = _resolve_point(inst, X, args)
    try:
        pv = galois_at_point(X, p)
        verdict = "none" if pv is None else pv.kind
    except SingularPoint:
        verdict = "singular"
    _emit({
        "schema": SCHEMA,
        "command": "galois-at-point",
        "point": render_point(p),
        "verdict": verdict,
    }, args.json_out)
    return EXIT_OK


def cmd_classify_cyclic(args):
    inst, X = _load_surface(args)
    w = _witness(inst, X, args.aut)
    rows = classify_cyclic(X, w)
    _emit({
        "schema": SCHEMA,
        "command": "classify-cyclic",
        "automorphism": args.aut,
        "rows": [{"row": r.row, "n_fixed": r.n_fixed, "divisor": r.divisor} for r in rows],
    }, args.json_out)
    return EXIT_OK


def _closure(inst, args):
    names = args.group.split(",") if "," in args.group else None
    if names is None:
        members = inst.groups.get(args.group)
        if members is None:
            raise GaloisScopeError(f"group {args.group!r} is not defined")
    else:
        members = names
    return group_closure([inst.automorphisms[m] for m in members], bound=args.bound)


def cmd_group_closure(args):
    inst, X = _load_surface(args)
    G = _closure(inst, args)
    _emit({
        "schema": SCHEMA,
        "command": "group-closure",
        "group": args.group,
        "order": G.order,
        "abelian": G.abelian,
        "cyclic": G.cyclic,
    }, args.json_out)
    return EXIT_OK


def cmd_rh_genus(args):
    inst, X = _load_surface(args)
    G = _closure(inst, args)
    rep = quotient_genus(X, G)
    _emit({
        "schema": SCHEMA,
        "command": "rh-genus",
        "group": args.group,
        "curve_genus": rep.curve_genus,
        "stabilizer_sum": rep.stabilizer_sum,
        "group_order": rep.group_order,
        "quotient_genus": rep.quotient_genus,
        "fix_counts": list(rep.fix_counts),
    }, args.json_out)
    return EXIT_OK


def cmd_count_points(args):
    inst, X = _load_surface(args)
    if args.candidates:
        coords = json.loads(Path(args.candidates).read_text())
        cands = [parse_point(c, X.field) for c in coords]
    elif args.eigen and inst is not None:
        ws = [_witness(inst, X, name) for name in inst.automorphisms]
        cands = eigen_candidate_points(X, ws)
    else:
        cands = coordinate_points(X)
    rep = count_certified_points(X, cands)
    _emit({
        "schema": SCHEMA,
        "command": "count-points",
        "inner": rep.inner,
        "outer": rep.outer,
        "inner_bound": rep.inner_bound,
        "outer_bound": rep.outer_bound,
        "per_point": [[render_point(p), v] for p, v in rep.per_point],
    }, args.json_out)
    return EXIT_OK


def cmd_corpus_run(args):
    reports = run_corpus(args.directory, jobs=args.jobs,
                         smooth_deadline=args.deadline, seed=args.seed)
    failures = sum(len(r["expectations"]["failures"]) for r in reports)
    matrix = [
        {
            "name": r["name"],
            "checked": r["expectations"]["checked"],
            "failures": r["expectations"]["failures"],
            "status": "pass" if not r["expectations"]["failures"] else "fail",
        }
        for r in reports
    ]
    _emit({
        "schema": SCHEMA,
        "command": "corpus-run",
        "matrix": matrix,
        "reports": reports,
        "status": "pass" if failures == 0 else "fail",
    }, args.json_out)
    return EXIT_OK if failures == 0 else EXIT_ASSERTION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="galois-scope",
        description="exact detection and certification of Galois points on smooth hypersurfaces")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", nargs="?", help="instance JSON file")
            p.add_argument("--poly", help="inline polynomial text instead of an instance file")
            p.add_argument("--field", type=int, default=1, help="conductor N for --poly")
            p.add_argument("--nvars", type=int, default=3, help="variable count for --poly")
        p.add_argument("--json-out", help="also write the JSON document to this path")

    p = sub.add_parser("check-smooth", help="certify smoothness via the Jacobian criterion")
    common(p)
    p.add_argument("--deadline", type=float, default=60.0, help="time budget in seconds")
    p.set_defaults(fn=cmd_check_smooth)

    p = sub.add_parser("verify-aut", help="verify a named matrix as an automorphism")
    common(p)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=cmd_verify_aut)

    p = sub.add_parser("order", help="projective order of a named matrix")
    common(p)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=cmd_order)

    p = sub.add_parser("fix-locus", help="fixed locus of an automorphism on X")
    common(p)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=cmd_fix_locus)

    p = sub.add_parser("galois-detect", help="certificate from an automorphism")
    common(p)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=cmd_galois_detect)

    p = sub.add_parser("galois-at-point", help="normal-form test at a candidate point")
    common(p)
    p.add_argument("--point", help="named point or e0/e1/...")
    p.add_argument("--coords", help="comma-separated coordinates")
    p.set_defaults(fn=cmd_galois_at_point)

    p = sub.add_parser("classify-cyclic", help="classification rows of a cyclic automorphism")
    common(p)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=cmd_classify_cyclic)

    p = sub.add_parser("group-closure", help="projective closure of named generators")
    common(p)
    p.add_argument("--group", required=True, help="group name or comma-separated generators")
    p.add_argument("--bound", type=int, default=4096)
    p.set_defaults(fn=cmd_group_closure)

    p = sub.add_parser("rh-genus", help="quotient genus by a finite group")
    common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--bound", type=int, default=4096)
    p.set_defaults(fn=cmd_rh_genus)

    p = sub.add_parser("count-points", help="certified Galois points over a candidate set")
    common(p)
    p.add_argument("--candidates", help="JSON file with a list of coordinate arrays")
    p.add_argument("--eigen", action="store_true",
                   help="candidates = coordinate points + eigenpoints of all automorphisms")
    p.set_defaults(fn=cmd_count_points)

    p = sub.add_parser("corpus-run", help="run the bundled (or given) corpus of instances")
    p.add_argument("directory", nargs="?", help="directory of instance files")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--deadline", type=float, default=None,
                   help="override the per-instance smoothness budget")
    p.add_argument("--seed", type=int, default=None,
                   help="override the seed of generator instances")
    p.add_argument("--json-out")
    p.set_defaults(fn=cmd_corpus_run)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, FileNotFoundError, json.JSONDecodeError, GaloisScopeError) as e:
        print(json.dumps({"schema": SCHEMA, "error": str(e)}), file=sys.stderr)
        return EXIT_INPUT


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
