"""JSON schemas for every input file, the corpus manifest and reports.

``docs/schemas`` holds the exported copies (``semisep schemas --out``).
"""
import copy
import json
import os

SCHEMA_VERSION = 1
DIALECT = "https://json-schema.org/draft/2020-12/schema"

_scalar = {"oneOf": [{"type": "integer"},
                     {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}]}
_vector = {"type": "array", "items": _scalar}
_matrix = {"type": "array", "items": _vector}
_tensor3 = {"type": "array", "items": _matrix}
_field = {"type": "string", "pattern": "^(Q|Fp:[0-9]+)$"}
_names = {"type": "array", "items": {"type": "string"}}
_name_map = {"type": "object", "additionalProperties": {"type": "string"}}
_ref = {"oneOf": [{"type": "string", "minLength": 1}, {"type": "object"}]}


def _doc(kind, props, required):
    props = dict(props)
    props["schema_version"] = {"const": SCHEMA_VERSION}
    props["kind"] = {"const": kind}
    props.setdefault("name", {"type": "string"})
    return {"$schema": DIALECT, "$id": "semisep/%s.schema.json" % kind, "title": kind,
            "type": "object", "properties": props,
            "required": ["schema_version", "kind"] + required, "additionalProperties": False}


SCHEMAS = {
    "category": _doc("category", {
        "objects": _names,
        "homs": {"type": "object", "propertyNames": {"pattern": "^.+->.+$"},
                 "additionalProperties": _names},
        "id": _name_map,
        "comp": {"type": "object", "propertyNames": {"pattern": "^.+∘.+$"},
                 "additionalProperties": {"type": "string"}},
    }, ["objects", "homs", "id"]),
    "functor": _doc("functor", {
        "source": _ref, "target": _ref, "obj_map": _name_map, "mor_map": _name_map,
    }, ["source", "target", "obj_map", "mor_map"]),
    "adjunction": _doc("adjunction", {
        "F": _ref, "G": _ref, "eta": _name_map, "eps": _name_map,
    }, ["F", "G", "eta", "eps"]),
    "triple": _doc("triple", {"left": _ref, "right": _ref}, ["left", "right"]),
    "algebra": _doc("algebra", {
        "field": _field, "dim": {"type": "integer", "minimum": 0}, "basis": _names,
        "mult": _tensor3, "unit": _vector,
    }, ["dim", "mult", "unit"]),
    "algebra_map": _doc("algebra_map", {
        "source": _ref, "target": _ref, "matrix": _matrix,
    }, ["source", "target", "matrix"]),
    "coalgebra": _doc("coalgebra", {
        "field": _field, "dim": {"type": "integer", "minimum": 0}, "basis": _names,
        "delta": _matrix, "eps": _vector,
    }, ["dim", "delta", "eps"]),
    "coalgebra_map": _doc("coalgebra_map", {
        "source": _ref, "target": _ref, "matrix": _matrix,
    }, ["source", "target", "matrix"]),
    "bimodule": _doc("bimodule", {
        "left_algebra": _ref, "right_algebra": _ref, "dim": {"type": "integer", "minimum": 0},
        "left": _tensor3, "right": _tensor3,
    }, ["left_algebra", "right_algebra", "dim", "left", "right"]),
    "coring": _doc("coring", {
        "bimodule": _ref, "delta": _matrix, "eps": _matrix,
    }, ["bimodule", "delta", "eps"]),
    "bialgebra": _doc("bialgebra", {
        "algebra": _ref, "coalgebra": _ref,
    }, ["algebra", "coalgebra"]),
    "manifest": _doc("manifest", {
        "cases": {"type": "array", "items": {
            "type": "object",
            "properties": {
                "id": {"type": "string", "pattern": "^[A-Za-z0-9_.-]+$"},
                "files": _names,
                "command": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                "expected": {"enum": ["holds", "fails", "indeterminate", "error"]},
                "provenance": {"enum": ["immediate", "hand-derived", "published-example"]},
                "witness_fragment": {"type": "object"},
            },
            "required": ["id", "files", "command", "expected", "provenance"],
            "additionalProperties": False}},
    }, ["cases"]),
    "report": _doc("report", {
        "command": {"type": "string"},
        "status": {"enum": ["holds", "fails", "indeterminate", "error"]},
        "input": {"type": "object"},
        "options": {"type": "object"},
        "result": {},
        "witness": {},
        "verification": {},
    }, ["command", "status", "input", "result", "witness", "verification"]),
}


def schema(kind, top=True):
    """The schema for ``kind``; inline (non top-level) documents may omit
    ``schema_version`` and ``kind``."""
    s = SCHEMAS[kind]
    if top:
        return s
    s = copy.deepcopy(s)
    s["required"] = [r for r in s["required"] if r not in ("schema_version", "kind")]
    return s


def export(directory):
    os.makedirs(directory, exist_ok=True)
    written = []
    for kind in sorted(SCHEMAS):
        path = os.path.join(directory, "%s.schema.json" % kind)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(SCHEMAS[kind]))
        written.append(path)
    return written


def dumps(obj):
    """Canonical JSON text used for every file the package writes."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
