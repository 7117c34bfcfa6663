"""Command line front end ``coxcalc``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .bunched import (
    BunchedRingError,
    NotAGITCone,
    SizeGuardExceeded,
    bunched_ring_from_chamber,
    canonical_toric_ambient,
    enumerate_maximal_true_bunches,
    size_guard,
)
from .cones import OutsideSupport
from .geometry import (
    IntersectionError,
    InternalInconsistency,
    NotRelevant,
    TorsionNotSupported,
    canonical_class,
    dimension,
    intersection_number,
    report,
)
from .gitfan import chamber_in_moving_cone, describe_semistable, enumerate_gitfan, git_cone, semistable_pattern
from .graded import Inhomogeneous, InvalidAPData
from .lattice import NotSurjective
from .modifications import (
    AdmissibilityUnverified,
    CenterNotInFan,
    MalformedGraph,
    NotAdmissible,
    NotASurface,
    ade_match,
    ap_surface_fan,
    bunched_ring_from_fan,
    intersection_matrix,
    kstar_resolve,
    modify,
    resolved_bunched_ring,
    self_intersections,
)
from .orbits import orbit_cones
from .plotting import NotPlottable, plot_gitfan
from .polynomial import _frac_str, parse_fraction
from .tables import Table, verify_table

EXIT_SCHEMA = 1
EXIT_MATH = 2
EXIT_SIZE = 3
EXIT_ROWS = 4

MATH_ERRORS = (
    BunchedRingError, NotAGITCone, OutsideSupport, IntersectionError, InternalInconsistency, NotRelevant,
    TorsionNotSupported, Inhomogeneous, NotSurjective, AdmissibilityUnverified, CenterNotInFan, NotAdmissible,
    NotASurface, NotPlottable, ZeroDivisionError,
)
SCHEMA_ERRORS = (io.SchemaError, FileNotFoundError, InvalidAPData, MalformedGraph)


class MathError(ValueError):
    pass


def _weights(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise io.SchemaError(f"bad weight vector {text!r}") from exc


def _load(args) -> io.Document:
    doc = io.load_document(args.input)
    if getattr(args, "assert_k_prime", False):
        doc.pres = doc.pres.with_trust()
    return doc


def _guarded_orbit_cones(pres):
    ocs = orbit_cones(pres)
    guard = size_guard()
    if len(ocs) > guard:
        raise SizeGuardExceeded(f"{len(ocs)} orbit cones exceed the size guard {guard} (set COXCALC_SIZE_GUARD)")
    return ocs


def _bunched_ring(doc: io.Document, args, ocs=None):
    pres = doc.pres
    ocs = ocs or orbit_cones(pres)
    weight = _weights(args.chamber) if getattr(args, "chamber", None) else doc.chamber
    if weight is not None:
        if len(weight) != pres.group.rank:
            raise io.SchemaError(f"chamber weight must have {pres.group.rank} entries")
        return bunched_ring_from_chamber(pres, git_cone(ocs, weight), ocs)
    if doc.fan is not None and doc.kind != "fan":
        return bunched_ring_from_fan(pres, doc.fan, ocs)
    if doc.ap is not None and doc.ap.s == 1:
        return bunched_ring_from_fan(pres, ap_surface_fan(doc.ap), ocs)
    return bunched_ring_from_chamber(pres, chamber_in_moving_cone(pres, ocs=ocs), ocs)


def _names(pres, face) -> list[str]:
    return [pres.var_names[i] for i in face]


# ---------------------------------------------------------------- subcommands


def cmd_orbit_cones(args):
    doc = _load(args)
    ocs = _guarded_orbit_cones(doc.pres)
    out = {"orbit_cones": [
        {"id": i, **c.to_json(), "dim": c.dim, "ffaces": [_names(doc.pres, f) for f in wit]}
        for i, (c, wit) in enumerate(zip(ocs.cones, ocs.witnesses))
    ]}
    lines = [f"{len(ocs)} orbit cones"]
    for o in out["orbit_cones"]:
        lines.append(f"  [{o['id']}] dim {o['dim']} rays {o['rays']} from {o['ffaces']}")
    return out, "\n".join(lines)


def cmd_gitfan(args):
    doc = _load(args)
    ocs = _guarded_orbit_cones(doc.pres)
    fan = enumerate_gitfan(ocs)
    out = fan.to_json()
    for entry, cone in zip(out["cones"], fan.cones):
        pattern = semistable_pattern(ocs, cone)
        entry["semistable"] = describe_semistable(doc.pres, pattern)
    if args.svg:
        plot_gitfan(fan, args.svg, doc.name)
    lines = [f"{len(fan.chambers)} chambers, {len(fan.cones)} cones"]
    for i, e in enumerate(out["cones"]):
        tag = "*" if e["chamber"] else " "
        lines.append(f" {tag}[{i}] dim {e['dim']} rays {e['rays']} bunch {e['bunch']} ss {e['semistable']}")
    lines.append(f"adjacency {out['adjacency']}")
    return out, "\n".join(lines)


def cmd_bunches(args):
    doc = _load(args)
    ocs = _guarded_orbit_cones(doc.pres)
    bunches = enumerate_maximal_true_bunches(doc.pres, ocs)
    out = {"count": len(bunches), "bunches": [b.to_json() for b in bunches]}
    lines = [f"{len(bunches)} maximal true bunches"]
    for k, b in enumerate(bunches):
        mins = b.minimal_members()
        lines.append(f"  [{k}] cones {list(b.phi)} minimal {mins}")
    return out, "\n".join(lines)


def cmd_report(args):
    doc = _load(args)
    rep = report(_bunched_ring(doc, args))
    return rep.to_json(), rep.to_text()


def _classes(args, doc):
    if args.classes:
        return [_weights(c) for c in args.classes.split(";")]
    if doc.classes is not None:
        return doc.classes
    return None


def cmd_intersect(args):
    doc = _load(args)
    br = _bunched_ring(doc, args)
    classes = _classes(args, doc)
    if classes is None:
        anti = tuple(-x for x in doc.pres.group.free_part(canonical_class(doc.pres)))
        classes = [anti] * dimension(br)
    value = intersection_number(br, classes)
    out = {"classes": [[_fmt(x) for x in c] for c in classes], "value": _fmt(value)}
    return out, f"{' . '.join(str(list(map(_fmt, c))) for c in classes)} = {_fmt(value)}"


def _fmt(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else _frac_str(x)


def cmd_modify(args):
    doc = _load(args)
    spec = doc.modification
    if args.center or args.coefficients:
        from .modifications import ModificationSpec

        if not (args.center and args.coefficients):
            raise io.SchemaError("--center and --coefficients go together")
        center = [int(x) - 1 for x in args.center.split(",")]
        coeffs = [int(x) for x in args.coefficients.split(",")]
        if any(c < 0 or c >= doc.pres.nvars for c in center):
            raise io.SchemaError("center index out of range (indices are 1-based)")
        try:
            spec = ModificationSpec(tuple(center), tuple(coeffs))
        except ValueError as exc:
            raise io.SchemaError(str(exc)) from exc
    if spec is None:
        raise io.SchemaError("no modification given (document field or --center/--coefficients)")
    fan = doc.fan
    if fan is None:
        fan = canonical_toric_ambient(_bunched_ring(doc, args))
    res = modify(doc.pres, spec, fan, assert_prime=args.assert_k_prime)
    out = res.to_json()
    text = [f"v_inf = {list(res.vinf)} (index {res.index})", res.pres.describe()]
    if res.fan is not None and not res.unchanged:
        rep = report(bunched_ring_from_fan(res.pres, res.fan))
        out["report"] = rep.to_json()
        text.append(rep.to_text())
    return out, "\n".join(text)


def cmd_kstar(args):
    doc = _load(args)
    if doc.ap is None:
        raise io.SchemaError("kstar resolve needs an ap_data or ow_graph document")
    res = kstar_resolve(doc.ap, check=not args.no_check)
    out = res.to_json()
    br = resolved_bunched_ring(res)
    selfs = self_intersections(res, br)
    matrix = intersection_matrix(br, res.exceptional)
    minus_two = [k for k, i in enumerate(res.exceptional) if matrix[k][k] == -2]
    label = ade_match([[matrix[a][b] for b in minus_two] for a in minus_two])
    out["self_intersections"] = {k: _fmt(v) for k, v in selfs.items()}
    out["intersection_matrix"] = [[_fmt(x) for x in row] for row in matrix]
    out["minus_two_configuration"] = label
    text = [f"{len(res.steps)} modification steps"]
    text += [f"  {s.kind} ray {list(s.ray)} check {s.modify_check}" for s in res.steps]
    text.append(res.pres.describe())
    text.append("exceptional curves: " + ", ".join(f"{k} ({_fmt(v)})" for k, v in selfs.items()))
    text.append(f"(-2)-configuration: {label if label is not None else 'not ADE'}")
    return out, "\n".join(text)


def cmd_verify(args):
    table = Table.from_json(io.read_json(args.input))
    results = verify_table(table, args.jobs)
    passed = sum(r.passed for r in results)
    out = {"table": table.name, "passed": passed, "total": len(results), "rows": [r.to_json() for r in results]}
    text = "\n".join([r.line() for r in results] + [f"{passed}/{len(results)} rows pass"])
    return out, text, (0 if passed == len(results) else EXIT_ROWS)


COMMANDS = {
    "orbit-cones": cmd_orbit_cones,
    "gitfan": cmd_gitfan,
    "bunches": cmd_bunches,
    "report": cmd_report,
    "intersect": cmd_intersect,
    "modify": cmd_modify,
    "kstar": cmd_kstar,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--chamber", help="interior weight 'w1,w2,..' selecting the GIT chamber")
    common.add_argument("--assert-k-prime", action="store_true", help="trust that the generators are K-prime")

    parser = argparse.ArgumentParser(prog="coxcalc", description="Exact computations with Cox rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("orbit-cones", "bunches", "report"):
        sub.add_parser(name, parents=[common]).add_argument("input")
    p = sub.add_parser("gitfan", parents=[common])
    p.add_argument("input")
    p.add_argument("--svg", help="draw the fan (rank at most 3) to FILE")
    p = sub.add_parser("intersect", parents=[common])
    p.add_argument("input")
    p.add_argument("--classes", help="classes 'a,b;c,d;..' (default: -K_X to the power dim X)")
    p = sub.add_parser("modify", parents=[common])
    p.add_argument("input")
    p.add_argument("--center", help="1-based variable indices '1,2,3'")
    p.add_argument("--coefficients", help="positive integers '3,1,2'")
    p = sub.add_parser("kstar", parents=[common])
    p.add_argument("action", choices=("resolve",))
    p.add_argument("input")
    p.add_argument("--no-check", action="store_true", help="skip the cross-check of each step with modify")
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("input")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: one per row, capped by CPUs)")
    return parser


def _emit(args, out, text) -> None:
    payload = io.dumps(out) if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else 0
    try:
        result = COMMANDS[args.command](args)
    except SizeGuardExceeded as exc:
        print(f"coxcalc: size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except SCHEMA_ERRORS as exc:
        print(f"coxcalc: input error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except MATH_ERRORS + (MathError, ValueError) as exc:
        print(f"coxcalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    out, text, *code = result
    _emit(args, out, text)
    return code[0] if code else 0


if __name__ == "__main__":
    sys.exit(main())
