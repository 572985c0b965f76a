"""JSON documents for series, paths, extended elements and cobordism families.

Writers emit terms in canonical index order so that equal values always
serialize to identical text.  Readers validate against the schemas below
before building anything.
"""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .cobordism import Cobordism, GammaFamily, gamma_from_json
from .groups import ExtendedElement
from .index import GradedIndexCategory, category_from_name
from .paths import PolyPath
from .rings import ring_from_name
from .series import Algebra, Series
from .tensor import is_symmetric

_COBORDISM = {
    "type": "object",
    "required": ["dim", "alpha", "beta"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "alpha": {"type": "array", "items": {"type": "string"}},
        "beta": {"type": "array", "items": {"type": "string"}},
        "body": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

_COBORDISM_INDEX = {
    "type": "object",
    "required": ["manifold", "length"],
    "properties": {
        "manifold": {"oneOf": [{"type": "null"}, _COBORDISM]},
        "length": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

GAMMA_SCHEMA = {
    "type": "object",
    "required": ["generators", "length_bound"],
    "properties": {
        "generators": {"type": "array", "items": _COBORDISM_INDEX},
        "length_bound": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}

SERIES_SCHEMA = {
    "type": "object",
    "required": ["category", "ring", "truncation", "terms"],
    "properties": {
        "category": {"type": "string"},
        "ring": {"type": "string"},
        "truncation": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "coeff"],
                "properties": {"index": {}, "coeff": {}},
                "additionalProperties": False,
            },
        },
        "symmetric": {"type": "boolean"},
        "family": GAMMA_SCHEMA,
    },
    "additionalProperties": False,
}

PATH_SCHEMA = {"type": "array", "items": SERIES_SCHEMA}

EXTENDED_SCHEMA = {
    "type": "object",
    "required": ["g0", "tail"],
    "properties": {"g0": {}, "tail": SERIES_SCHEMA},
    "additionalProperties": False,
}


class DocumentError(ValueError):
    """A document failed schema validation or could not be interpreted."""


def _validate(doc: Any, schema: dict) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise DocumentError(exc.message) from exc


def series_to_doc(a: Series, symmetric: bool | None = None) -> dict:
    cat, ring = a.category, a.ring
    doc: dict[str, Any] = {
        "category": cat.name,
        "ring": ring.name,
        "truncation": a.truncation,
        "terms": [{"index": cat.index_to_json(i), "coeff": ring.to_json(c)} for i, c in a.items()],
    }
    if isinstance(cat, GammaFamily):
        doc["family"] = cat.to_json()
    if symmetric:
        doc["symmetric"] = True
    return doc


def _category(doc: dict, category: GradedIndexCategory | None) -> GradedIndexCategory:
    if category is not None:
        if category.name != doc["category"]:
            raise DocumentError(f"document category {doc['category']!r} does not match {category.name!r}")
        return category
    if doc["category"] == "gamma":
        if "family" not in doc:
            raise DocumentError("a gamma series document needs its family")
        report = gamma_from_json(doc["family"])
        if not report.ok:
            raise DocumentError("invalid family: " + "; ".join(report.violations))
        return report.family
    try:
        return category_from_name(doc["category"])
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def series_from_doc(doc: Any, category: GradedIndexCategory | None = None) -> Series:
    _validate(doc, SERIES_SCHEMA)
    cat = _category(doc, category)
    try:
        ring = ring_from_name(doc["ring"])
        alg = Algebra(cat, ring, doc["truncation"])
        terms = {}
        for t in doc["terms"]:
            i = cat.index_from_json(t["index"])
            if i in terms:
                raise DocumentError(f"duplicate index {t['index']!r}")
            terms[i] = ring.from_json(t["coeff"])
        a = Series(alg, terms)
    except (ValueError, TypeError, KeyError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc)) from exc
    if doc.get("symmetric") and not is_symmetric(a):
        raise DocumentError("document is flagged symmetric but is not fixed by symmetrization")
    return a


def path_to_doc(p: PolyPath) -> list[dict]:
    return [series_to_doc(c) for c in p.coeffs] or [series_to_doc(p.algebra.zero())]


def path_from_doc(doc: Any) -> PolyPath:
    _validate(doc, PATH_SCHEMA)
    if not doc:
        raise DocumentError("a path document needs at least one coefficient")
    coeffs = [series_from_doc(d) for d in doc]
    alg = coeffs[0].algebra
    if any(c.algebra != alg for c in coeffs):
        raise DocumentError("path coefficients from different algebras")
    return PolyPath(alg, coeffs)


def extended_to_doc(p: ExtendedElement) -> dict:
    return {"g0": p.tail.ring.to_json(p.g0), "tail": series_to_doc(p.tail)}


def extended_from_doc(doc: Any) -> ExtendedElement:
    _validate(doc, EXTENDED_SCHEMA)
    tail = series_from_doc(doc["tail"])
    try:
        return ExtendedElement(tail.ring.from_json(doc["g0"]), tail)
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc


def gamma_doc_validate(doc: Any) -> None:
    _validate(doc, GAMMA_SCHEMA)


def cobordism_from_doc(doc: Any) -> Cobordism:
    _validate(doc, _COBORDISM)
    return Cobordism.from_json(doc)


def _compact(v: Any) -> str:
    return json.dumps(v, ensure_ascii=False, separators=(", ", ": "))


def _format(v: Any, pad: str) -> str:
    inner = pad + "  "
    if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
        # a path (list of series) or a list of terms / generators
        return "[\n" + ",\n".join(inner + _format(x, inner) for x in v) + "\n" + pad + "]"
    if isinstance(v, dict) and any(k in v for k in ("terms", "tail", "generators")):
        items = [f"{inner}{json.dumps(k)}: {_format(x, inner)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    return _compact(v)


def dumps(doc: Any) -> str:
    """Canonical text form: one key per line, one compact term per line, trailing newline."""
    return _format(doc, "") + "\n"
