"""JSON input documents and canonical serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .cones import Cone, Fan
from .graded import APData, GradedPresentation, InvalidAPData
from .lattice import AbelianGroup, cokernel
from . import linalg
from .polynomial import ParseError, _frac_str, parse_fraction, parse_polynomial


class SchemaError(ValueError):
    pass


_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
_INT_MATRIX = {"type": "array", "items": _INT_VECTOR}
_NUMBER = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_GROUP = {
    "type": "object",
    "properties": {"rank": {"type": "integer", "minimum": 0}, "torsion": _INT_VECTOR},
    "required": ["rank"],
}
_COMMON = {
    "name": {"type": "string"},
    "chamber": {"type": "array", "items": _NUMBER},
    "assertions": {"type": "object"},
    "classes": {"type": "array", "items": {"type": "array", "items": _NUMBER}},
    "modification": {
        "type": "object",
        "properties": {
            "center": {"type": "array", "items": {"type": ["integer", "string"]}, "minItems": 1},
            "coefficients": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        },
        "required": ["center", "coefficients"],
    },
    "fan": {
        "type": "object",
        "properties": {"rays": _INT_MATRIX, "max_cones": _INT_MATRIX},
        "required": ["rays", "max_cones"],
    },
}

SCHEMAS = {
    "presentation": {
        "type": "object",
        "properties": {
            "kind": {"const": "presentation"},
            "variables": {"type": "array", "items": {"type": "string"}, "minItems": 1},
            "group": _GROUP,
            "degrees": _INT_MATRIX,
            "degree_matrix": _INT_MATRIX,
            "relations": {"type": "array", "items": {"type": "string"}},
            "params": {"type": "object", "additionalProperties": _NUMBER},
            **_COMMON,
        },
        "required": ["kind", "variables", "group"],
        "oneOf": [{"required": ["degrees"]}, {"required": ["degree_matrix"]}],
    },
    "ap_data": {
        "type": "object",
        "properties": {
            "kind": {"const": "ap_data"},
            "r": {"type": "integer", "minimum": 1},
            "ns": _INT_VECTOR,
            "ls": _INT_MATRIX,
            "m": {"type": "integer", "minimum": 0},
            "s": {"type": "integer", "minimum": 1},
            "A": {"type": "array", "items": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}},
            "d": _INT_MATRIX,
            "dprime": _INT_MATRIX,
            **_COMMON,
        },
        "required": ["kind", "r", "ns", "ls", "A", "d"],
    },
    "fan": {
        "type": "object",
        "properties": {"kind": {"const": "fan"}, "rays": _INT_MATRIX, "max_cones": _INT_MATRIX, **_COMMON},
        "required": ["kind", "rays", "max_cones"],
    },
    "ow_graph": {
        "type": "object",
        "properties": {
            "kind": {"const": "ow_graph"},
            "arms": _INT_MATRIX,
            "bplus": {"type": "integer"},
            "bminus": {"type": "integer"},
            "points": {"type": "array", "items": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2}},
            **_COMMON,
        },
        "required": ["kind", "arms", "bplus", "bminus"],
    },
}


@dataclass
class Document:
    kind: str
    pres: GradedPresentation
    raw: dict
    name: str = ""
    ap: APData | None = None
    fan: Fan | None = None
    graph: Any = None
    chamber: tuple | None = None
    modification: Any = None
    classes: list | None = None
    assertions: dict = field(default_factory=dict)


def presentation_to_json(pres: GradedPresentation) -> dict:
    return {
        "kind": "presentation",
        "variables": list(pres.var_names),
        "group": pres.group.to_json(),
        "degrees": [list(pres.group.normalize(w)) for w in pres.degrees],
        "relations": [f.to_string(pres.var_names) for f in pres.relations],
    }


def _degrees(obj, group: AbelianGroup, nvars: int) -> list[tuple[int, ...]]:
    if "degrees" in obj:
        degs = [tuple(w) for w in obj["degrees"]]
    else:
        rows = obj["degree_matrix"]
        if any(len(r) != nvars for r in rows):
            raise SchemaError("degree_matrix rows must have one entry per variable")
        degs = [tuple(c) for c in zip(*rows)] if rows else [()] * nvars
    if len(degs) != nvars:
        raise SchemaError(f"expected {nvars} degrees, got {len(degs)}")
    if any(len(w) != group.length for w in degs):
        raise SchemaError(f"degrees must have length {group.length}")
    return [group.normalize(w) for w in degs]


def presentation_from_json(obj: dict, trusted: bool = False) -> GradedPresentation:
    names = list(obj["variables"])
    if len(set(names)) != len(names):
        raise SchemaError("variable names repeat")
    group = AbelianGroup.from_json(obj["group"])
    degs = _degrees(obj, group, len(names))
    params = {k: parse_fraction(v) for k, v in obj.get("params", {}).items()}
    try:
        rels = tuple(parse_polynomial(t, names, params) for t in obj.get("relations", []))
    except ParseError as exc:
        raise SchemaError(str(exc)) from exc
    return GradedPresentation(tuple(names), group, tuple(degs), rels, trusted)


def toric_presentation(fan: Fan) -> GradedPresentation:
    """Polynomial Cox ring of the toric variety of a fan whose rays span the lattice."""
    P = linalg.transpose([list(r) for r in fan.rays])
    group, proj = cokernel(linalg.transpose(P), len(fan.rays))
    names = tuple(f"T{i + 1}" for i in range(len(fan.rays)))
    return GradedPresentation(names, group, tuple(proj.columns()), (), True)


def _validate(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("input document must be a JSON object")
    kind = obj.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {sorted(SCHEMAS)}")
    try:
        jsonschema.validate(obj, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{path or kind}: {exc.message}") from exc
    return kind


def parse_document(obj: dict) -> Document:
    from .modifications import MalformedGraph, ModificationSpec, OWGraph, ow_to_ap, ow_to_cox
    from .graded import build_rap

    kind = _validate(obj)
    assertions = dict(obj.get("assertions", {}))
    trusted = bool(assertions.get("k_prime_generators", False))
    doc_fan = Fan.from_json(obj["fan"]) if "fan" in obj else None
    ap = graph = None
    try:
        if kind == "presentation":
            pres = presentation_from_json(obj, trusted)
        elif kind == "ap_data":
            ap = APData.from_json(obj).validate()
            pres = build_rap(ap)
        elif kind == "fan":
            doc_fan = Fan.from_json(obj)
            pres = toric_presentation(doc_fan)
        else:
            graph = OWGraph.from_json(obj)
            ap = ow_to_ap(graph)
            pres = ow_to_cox(graph)
    except (InvalidAPData, MalformedGraph, KeyError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc
    if doc_fan is not None:
        if len(doc_fan.rays) != pres.nvars and kind != "fan":
            raise SchemaError("fan must have one ray per variable")
        if any(i < 0 or i >= len(doc_fan.rays) for c in doc_fan.max_cones for i in c):
            raise SchemaError("fan cone index out of range")
    chamber = tuple(parse_fraction(x) for x in obj["chamber"]) if "chamber" in obj else None
    if chamber is not None and len(chamber) != pres.group.rank:
        raise SchemaError(f"chamber weight must have {pres.group.rank} entries")
    mod = None
    if "modification" in obj:
        m = obj["modification"]
        center = []
        for c in m["center"]:
            if isinstance(c, str):
                if c not in pres.var_names:
                    raise SchemaError(f"unknown variable {c!r} in modification center")
                center.append(pres.var_names.index(c))
            else:
                if not 1 <= c <= pres.nvars:
                    raise SchemaError("modification center index out of range (indices are 1-based)")
                center.append(c - 1)
        try:
            mod = ModificationSpec(tuple(center), tuple(m["coefficients"]))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    classes = None
    if "classes" in obj:
        classes = [tuple(parse_fraction(x) for x in c) for c in obj["classes"]]
        if any(len(c) != pres.group.rank for c in classes):
            raise SchemaError(f"classes must have {pres.group.rank} entries")
    return Document(kind, pres, obj, obj.get("name", ""), ap, doc_fan, graph, chamber, mod, classes, assertions)


def _resolve_path(path: str | Path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    data = resources.files("coxcalc") / "data"
    for candidate in (data / str(path), data / "examples" / p.name, data / "tables" / p.name):
        if candidate.is_file():
            return Path(str(candidate))
    raise FileNotFoundError(f"no such file: {path}")


def read_json(path: str | Path) -> dict:
    p = _resolve_path(path)
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p}: invalid JSON ({exc})") from exc


def load_document(path: str | Path) -> Document:
    return parse_document(read_json(path))


def document_to_json(doc: Document) -> dict:
    """Canonical JSON for a parsed document (a fixpoint of parse then serialize)."""
    if doc.kind == "presentation":
        out = presentation_to_json(doc.pres)
        params = doc.raw.get("params")
        if params:
            out["relations"] = list(doc.raw["relations"])
            out["params"] = {k: _frac_str(parse_fraction(v)) for k, v in sorted(params.items())}
    elif doc.kind == "ap_data":
        out = doc.ap.to_json()
    elif doc.kind == "fan":
        out = {"kind": "fan", **doc.fan.to_json()}
    else:
        out = doc.graph.to_json()
    if doc.name:
        out["name"] = doc.name
    if doc.kind != "fan" and doc.fan is not None:
        out["fan"] = doc.fan.to_json()
    if doc.chamber is not None:
        out["chamber"] = [_frac_str(Fraction(x)) if Fraction(x).denominator != 1 else int(x) for x in doc.chamber]
    if doc.modification is not None:
        out["modification"] = doc.modification.to_json()
    if doc.classes is not None:
        out["classes"] = [[_frac_str(Fraction(x)) if Fraction(x).denominator != 1 else int(x) for x in c]
                          for c in doc.classes]
    if doc.assertions:
        out["assertions"] = dict(sorted(doc.assertions.items()))
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return _frac_str(x) if x.denominator != 1 else int(x)
    if isinstance(x, Cone):
        return x.to_json()
    if isinstance(x, AbelianGroup):
        return x.to_json()
    raise TypeError(f"not serializable: {type(x)}")
