"""JSON forms of varieties, witnesses and reports.

All polynomials are stored as canonical strings (see ``polyparse``), so
equal objects serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict

from ..polyparse import ParseError, format_polynomial, parse_polynomial
from ..polyring import VarContext
from .variety import Coordinate, ReductionError, VarietyPresentation
from .witness import EmbeddingWitness

VERSION = 1


class FormatError(ValueError):
    """Malformed JSON document (maps to the parse-error exit code)."""


def variety_to_json(v: VarietyPresentation) -> Dict[str, Any]:
    meta = v.meta
    return {
        "version": VERSION,
        "case": meta["case"],
        "meta": {"d": meta["d"], "e": meta["e"], "n": meta["n"]},
        "coordinates": [{"name": c.name, "role": c.role} for c in v.coordinates],
        "equations": [format_polynomial(eq) for eq in v.equations],
        "labels": list(v.labels),
    }


def variety_from_json(doc: Dict[str, Any]) -> VarietyPresentation:
    try:
        _check_version(doc)
        coords = tuple(Coordinate(c["name"], c["role"]) for c in doc["coordinates"])
        ctx = VarContext(c.name for c in coords)
        eqs = tuple(parse_polynomial(s, ctx) for s in doc["equations"])
        meta = {"case": doc["case"], **{k: doc["meta"].get(k) for k in ("d", "e", "n")}}
        labels = tuple(doc.get("labels") or ())
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise FormatError(f"malformed variety document: {exc}") from exc
    v = VarietyPresentation(coords, eqs, meta, labels)
    v.validate()
    return v


def witness_to_json(w: EmbeddingWitness) -> Dict[str, Any]:
    return {
        "version": VERSION,
        "case": w.case,
        "domain_dim": w.m,
        "domain_vars": list(w.domain_vars),
        "integers": [list(row) for row in w.integers],
        "assignment": {c: format_polynomial(p.embed(w.ctx)) for c, p in w.assignment.items()},
    }


def witness_from_json(doc: Dict[str, Any]) -> EmbeddingWitness:
    try:
        _check_version(doc)
        m = int(doc["domain_dim"])
        dvars = tuple(doc.get("domain_vars") or (["t"] if m == 1 else [f"t_{k}" for k in range(1, m + 1)]))
        if len(dvars) != m:
            raise FormatError(f"domain_dim {m} but {len(dvars)} domain variables")
        ctx = VarContext(dvars + tuple(doc["assignment"]))
        assignment = {c: parse_polynomial(s, ctx) for c, s in doc["assignment"].items()}
        integers = tuple(tuple(int(x) for x in row) for row in doc.get("integers", []))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (ParseError, FormatError)):
            raise
        raise FormatError(f"malformed witness document: {exc}") from exc
    return EmbeddingWitness(dvars, assignment, integers, doc.get("case", "real"))


def _check_version(doc):
    if doc.get("version") != VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}")


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return o.numerator if o.denominator == 1 else f"{o.numerator}/{o.denominator}"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def write_json(path, doc: Dict[str, Any]):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def read_json(path) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
