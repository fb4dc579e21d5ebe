"""Instance files, deterministic reports, and the bundled corpus runner.

An instance is a single self-describing JSON document: dimensions, conductor,
the defining polynomial, named automorphism matrices and named points, plus
optional expectations.  A report is reproducible from the instance alone;
expectation failures are collected rather than raised so a corpus run can
present the full pass/fail matrix.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path

from .errors import GaloisScopeError, SingularPoint
from .exactnum import cyclo_field
from .fixlocus import codim_criterion, curve_criterion, fixed_locus, power_criterion
from .galois import (
    certificate_from_automorphism,
    coordinate_points,
    count_certified_points,
    eigen_candidate_points,
    galois_at_point,
)
from .hypersurface import Hypersurface, is_smooth, verify_automorphism
from .parsing import parse_matrix, parse_point, parse_polynomial, render_poly, render_scalar
from .planecurves import abelian_constraint_check, classify_cyclic, group_closure, quotient_genus
from .polyring import HomogPoly
from .projlin import ProjMatrix, projective_order

SCHEMA = "galois-scope/1"
DEFAULT_SMOOTH_DEADLINE = 60.0


@dataclass
class Instance:
    name: str
    n: int
    d: int
    conductor: int
    surface: Hypersurface
    automorphisms: dict[str, ProjMatrix]
    points: dict[str, tuple]
    groups: dict[str, list[str]]
    expect: dict
    notes: list[str]
    raw: dict


def instance_hash(raw: dict) -> str:
    blob = json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def load_instance(source) -> Instance:
    """Load an instance from a path or an already-parsed document."""
    if isinstance(source, (str, Path)):
        raw = json.loads(Path(source).read_text())
    else:
        raw = source
    if raw.get("schema") != SCHEMA:
        raise GaloisScopeError(f"unsupported schema {raw.get('schema')!r}")
    field = cyclo_field(int(raw["field"]))
    n, d = int(raw["n"]), int(raw["d"])
    F = parse_polynomial(raw["polynomial"], n + 2, field, degree=d)
    auts = {name: parse_matrix(rows, field)
            for name, rows in raw.get("automorphisms", {}).items()}
    pts = {name: parse_point(coords, field)
           for name, coords in raw.get("points", {}).items()}
    return Instance(
        name=raw["name"],
        n=n,
        d=d,
        conductor=field.N,
        surface=Hypersurface(n, d, F),
        automorphisms=auts,
        points=pts,
        groups=raw.get("groups", {}),
        expect=raw.get("expect", {}),
        notes=raw.get("notes", []),
        raw=raw,
    )


def render_point(p) -> list[str]:
    return [render_scalar(x) for x in p]


def certificate_json(cert):
    if cert is None:
        return None
    return {
        "kind": cert.kind,
        "point": render_point(cert.point),
        "group_order": cert.group_order,
        "ratio": render_scalar(cert.ratio),
        "field": cert.field.N,
    }


def fixed_locus_json(report):
    return {
        "field": report.field.N,
        "total_finite": report.total_finite_count,
        "max_dim": report.max_component_dim,
        "components": [
            {
                "eigenvalue": render_scalar(c.eigenvalue),
                "kind": c.kind,
                "dim": c.dim,
                "count": c.count,
                "points": [render_point(p) for p in c.points] if c.points else None,
            }
            for c in report.components
        ],
    }


def criterion_json(res):
    holds = {True: "holds", False: "fails", None: "indeterminate"}[res.holds]
    return {
        "name": res.name,
        "kind": res.kind,
        "verdict": holds,
        "certificate": certificate_json(res.certificate),
        "detail": res.detail,
    }


class _Expect:
    """Accumulates expectation checks against computed values."""

    def __init__(self):
        self.checked = 0
        self.failures: list[str] = []

    def check(self, label, expected, got):
        self.checked += 1
        if expected != got:
            self.failures.append(f"{label}: expected {expected!r}, got {got!r}")


def build_report(inst: Instance, smooth_deadline: float | None = None) -> dict:
    """Compute every section the instance's expectations mention and compare."""
    X = inst.surface
    exp = _Expect()
    expect = inst.expect
    report: dict = {
        "schema": SCHEMA,
        "kind": "report",
        "name": inst.name,
        "instance_hash": instance_hash(inst.raw),
        "n": inst.n,
        "d": inst.d,
        "field": inst.conductor,
        "polynomial": render_poly(X.F),
        "discrepancies": list(inst.notes),
    }

    smooth_expect = expect.get("smooth", "skip")
    if smooth_expect != "skip":
        deadline = smooth_deadline or expect.get("smooth_deadline", DEFAULT_SMOOTH_DEADLINE)
        res = is_smooth(X, deadline=deadline, allow_large=True)
        report["smoothness"] = {
            "status": res.status,
            "witness": render_point(res.witness) if res.witness else None,
        }
        if smooth_expect == "optional":
            exp.check("smoothness (optional: smooth or timeout)", True,
                      res.status in ("certified_smooth", "timeout"))
        else:
            exp.check("smoothness", smooth_expect, res.status)
            if "singular_witness" in expect:
                exp.check("singular witness", expect["singular_witness"],
                          render_point(res.witness) if res.witness else None)
    else:
        report["smoothness"] = None

    aut_reports = {}
    witnesses = {}
    for name, A in inst.automorphisms.items():
        entry: dict = {}
        w = verify_automorphism(X, A)
        entry["verified"] = w is not None
        entry["order"] = w.order if w is not None else projective_order(A)
        entry["scale"] = render_scalar(w.scale) if w is not None else None
        if w is not None:
            witnesses[name] = w
            cert = certificate_from_automorphism(X, w)
            entry["certificate"] = certificate_json(cert)
        aut_reports[name] = entry
    report["automorphisms"] = aut_reports

    for name, aut_expect in expect.get("automorphisms", {}).items():
        entry = aut_reports.get(name)
        if entry is None:
            exp.failures.append(f"automorphism {name}: not defined in the instance")
            continue
        w = witnesses.get(name)
        for key in ("verified", "order", "scale"):
            if key in aut_expect:
                exp.check(f"{name}.{key}", aut_expect[key], entry.get(key))
        if "certificate" in aut_expect:
            got = entry.get("certificate")
            want = aut_expect["certificate"]
            if want is None or got is None:
                exp.check(f"{name}.certificate", want, got)
            else:
                for key in want:
                    exp.check(f"{name}.certificate.{key}", want[key], got.get(key))
        if "detect_powers_none" in aut_expect and w is not None:
            for j in aut_expect["detect_powers_none"]:
                wj = verify_automorphism(X, w.matrix ** j)
                cert = certificate_from_automorphism(X, wj) if wj else None
                exp.check(f"{name}^b{j} detector", None, certificate_json(cert))
        if "fixed_locus" in aut_expect and w is not None:
            rep = fixed_locus(X, w)
            fl = fixed_locus_json(rep)
            entry["fixed_locus"] = fl
            want = aut_expect["fixed_locus"]
            for key in ("total_finite", "max_dim"):
                if key in want:
                    exp.check(f"{name}.fixed_locus.{key}", want[key], fl[key])
            if "component_count" in want:
                exp.check(f"{name}.fixed_locus.component_count",
                          want["component_count"], len(fl["components"]))
        if "rows" in aut_expect and w is not None:
            rows = [r.row for r in classify_cyclic(X, w)]
            entry["classification_rows"] = rows
            exp.check(f"{name}.rows", aut_expect["rows"], rows)
        if "rows_include" in aut_expect and w is not None:
            rows = [r.row for r in classify_cyclic(X, w)]
            entry["classification_rows"] = rows
            for r in aut_expect["rows_include"]:
                exp.check(f"{name}.rows includes {r}", True, r in rows)
        if "criterion" in aut_expect and w is not None:
            spec_c = aut_expect["criterion"]
            cname = spec_c["name"]
            if cname == "curve":
                res = curve_criterion(X, w)
            elif cname == "codim":
                res = codim_criterion(X, w)
            else:
                res = power_criterion(X, w, spec_c["k"])
            cj = criterion_json(res)
            entry["criterion"] = cj
            exp.check(f"{name}.criterion.verdict", spec_c["verdict"], cj["verdict"])

    if "points" in expect:
        verdicts = {}
        for pname, want in expect["points"].items():
            if pname.startswith("e") and pname[1:].isdigit():
                i = int(pname[1:])
                f = X.field
                p = tuple(f.one if j == i else f.zero for j in range(X.n + 2))
            else:
                p = inst.points[pname]
            try:
                pv = galois_at_point(X, p)
                got = "none" if pv is None else pv.kind
            except SingularPoint:
                got = "singular"
            verdicts[pname] = got
            exp.check(f"point {pname}", want, got)
        report["points"] = verdicts

    if "counts" in expect:
        want = expect["counts"]
        if want.get("candidates", "coordinate") == "eigen":
            cands = eigen_candidate_points(X, list(witnesses.values()))
        else:
            cands = coordinate_points(X)
        cr = count_certified_points(X, cands)
        report["counts"] = {
            "inner": cr.inner,
            "outer": cr.outer,
            "inner_bound": cr.inner_bound,
            "outer_bound": cr.outer_bound,
            "per_point": [[render_point(p), v] for p, v in cr.per_point],
        }
        exp.check("counts.inner", want.get("inner"), cr.inner)
        exp.check("counts.outer", want.get("outer"), cr.outer)

    closures = {}
    for gname, members in inst.groups.items():
        closures[gname] = group_closure([inst.automorphisms[m] for m in members])

    if "rh" in expect:
        want = expect["rh"]
        G = closures[want["group"]]
        rep = quotient_genus(X, G)
        report["rh"] = {
            "group": want["group"],
            "curve_genus": rep.curve_genus,
            "stabilizer_sum": rep.stabilizer_sum,
            "group_order": rep.group_order,
            "quotient_genus": rep.quotient_genus,
            "fix_counts": list(rep.fix_counts),
        }
        for key in ("curve_genus", "stabilizer_sum", "group_order", "quotient_genus", "fix_counts"):
            if key in want:
                exp.check(f"rh.{key}", want[key], report["rh"][key])

    if "abelian_check" in expect:
        want = expect["abelian_check"]
        G = closures[want["group"]]
        res = abelian_constraint_check(X, G)
        report["abelian_check"] = {"group": want["group"], "verdict": res.verdict,
                                   "reason": res.reason}
        exp.check("abelian_check.verdict", want["verdict"], res.verdict)

    if "discrepancies_nonempty" in expect:
        exp.check("discrepancies recorded", True, len(report["discrepancies"]) > 0)

    report["expectations"] = {"checked": exp.checked, "failures": exp.failures}
    return report


# ---------------------------------------------------------------------------
# seeded normal-form family

def random_unimodular(rng: random.Random, field, size: int) -> ProjMatrix:
    """Random integer matrix of determinant +-1 (product of shears and swaps),
    so the inverse is again integral and coordinate changes stay small."""
    rows = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(size + 3):
        i, j = rng.sample(range(size), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            k, l = rng.sample(range(size), 2)
            rows[k], rows[l] = rows[l], rows[k]
    return ProjMatrix.from_entries(field, rows)


def normal_form_instance(rng: random.Random, n: int, d: int, kind: str):
    """A hypersurface in Galois normal form composed with a random change.

    Returns (X, generator matrix, expected point): the generator is the
    conjugated diagonal of order d-1 or d, the point the transported center.
    """
    order = d - 1 if kind == "inner" else d
    field = cyclo_field(order)
    nv = n + 2
    terms: dict = {}
    if kind == "inner":
        terms[(d - 1, 1) + (0,) * n] = 1
    else:
        terms[(d,) + (0,) * (n + 1)] = 1
    for i in range(1, nv):
        mono = [0] * nv
        mono[i] = d
        terms[tuple(mono)] = rng.randint(1, 3)
    for _ in range(rng.randint(1, 3)):
        mono = [0] * nv
        for _ in range(d):
            mono[rng.randrange(1, nv)] += 1
        c = rng.randint(-2, 2)
        if c and tuple(mono) not in terms:
            terms[tuple(mono)] = c
    F0 = HomogPoly.from_terms(field, nv, terms, degree=d)
    A0 = ProjMatrix.diagonal(field, [field.zeta()] + [1] * (n + 1))
    C = random_unimodular(rng, field, nv)
    X = Hypersurface(n, d, F0.transform(C.inverse()))
    B = C @ A0 @ C.inverse()
    p = C.apply(tuple(field.one if i == 0 else field.zero for i in range(nv)))
    return X, B, p, C


def run_family(seed: int, count: int, dims, degrees) -> dict:
    """Detector round trip over the seeded family; both detectors must agree."""
    from .projlin import vec_embed, vec_proj_eq
    import math

    rng = random.Random(seed)
    failures = []
    ran = 0
    while ran < count:
        for kind in ("inner", "outer"):
            if ran >= count:
                break
            n = rng.choice(list(dims))
            d = rng.choice(list(degrees))
            X, B, p, _ = normal_form_instance(rng, n, d, kind)
            label = f"{kind} n={n} d={d} #{ran}"
            w = verify_automorphism(X, B)
            if w is None:
                failures.append(f"{label}: generator failed verification")
                ran += 1
                continue
            cert = certificate_from_automorphism(X, w)
            if cert is None or cert.kind != kind:
                failures.append(f"{label}: detector missed the certificate")
                ran += 1
                continue
            target = cyclo_field(math.lcm(cert.field.N, X.field.N))
            if not vec_proj_eq(vec_embed(cert.point, target),
                               tuple(vec_embed(p, target))):
                failures.append(f"{label}: certificate at the wrong point")
            pv = galois_at_point(X, p)
            if pv is None or pv.kind != kind:
                failures.append(f"{label}: point-side detector disagreed")
            ran += 1
    return {"instances": ran, "failures": failures}


def run_generator(raw: dict, seed: int | None = None) -> dict:
    result = run_family(
        seed if seed is not None else raw.get("seed", 20240601),
        raw.get("count", 12),
        raw.get("dims", [1, 2, 3]),
        raw.get("degrees", [4, 5, 6, 7]),
    )
    return {
        "schema": SCHEMA,
        "kind": "report",
        "name": raw["name"],
        "instance_hash": instance_hash(raw),
        "family": {"instances": result["instances"]},
        "expectations": {"checked": result["instances"],
                         "failures": result["failures"]},
    }


# ---------------------------------------------------------------------------
# corpus driver

def bundled_corpus_dir() -> Path:
    return Path(__file__).parent / "data"


def corpus_paths(directory=None) -> list[Path]:
    base = Path(directory) if directory else bundled_corpus_dir()
    return sorted(base.glob("*.json"))


def run_one(path, smooth_deadline=None, seed=None) -> dict:
    raw = json.loads(Path(path).read_text())
    if raw.get("kind") == "generator":
        return run_generator(raw, seed=seed)
    return build_report(load_instance(raw), smooth_deadline=smooth_deadline)


def run_corpus(directory=None, jobs: int = 1, smooth_deadline=None, seed=None) -> list[dict]:
    paths = corpus_paths(directory)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(run_one, str(p), smooth_deadline, seed) for p in paths]
            return [f.result() for f in futures]
    return [run_one(p, smooth_deadline, seed) for p in paths]
