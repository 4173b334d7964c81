"""JSON input/output for complexes, stratifications and reports."""

import json
from pathlib import Path

from .complex import Stratification, closure, load_complex, validate_stratification
from .deligne import LocalSystem
from .errors import ValidationError
from .infinity import to_json


def read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj):
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, default=to_json) + "\n"


def complex_from_json(desc):
    if not isinstance(desc, dict):
        raise ValidationError("complex description must be a JSON object")
    return load_complex(desc)


def depth_map(desc):
    """Accept {"depth": {...}} or a bare {"a,b": k} mapping."""
    if isinstance(desc, dict) and "depth" in desc:
        desc = desc["depth"]
    if desc is None:
        return {}
    if not isinstance(desc, dict):
        raise ValidationError("depth map must be a JSON object keyed by simplices")
    return desc


def stratification_from_json(cx, desc, validate=True):
    strat = Stratification.from_keys(cx, depth_map(desc))
    if validate:
        validate_stratification(strat)
    return strat


def sigma_from_json(cx, desc):
    """A closed set given as a list of simplices ("a,b" strings or name lists)."""
    if isinstance(desc, dict):
        desc = desc.get("sigma", [])
    if not isinstance(desc, list):
        raise ValidationError("sigma must be a list of simplices")
    return frozenset(closure(cx.parse_key(s) for s in desc))


def coefficients_from_json(cx, carrier, desc, field):
    if not isinstance(desc, dict):
        raise ValidationError("coefficient system must be a JSON object")
    return LocalSystem.from_json(cx, carrier, desc, field)


def complex_to_json(cx, strat=None):
    out = {"vertices": list(cx.vertices),
           "maximal_simplices": [[cx.vertices[v] for v in s] for s in cx.maximal_simplices()]}
    if strat is not None:
        out["depth"] = dict(sorted(strat.to_keys().items()))
    return out
