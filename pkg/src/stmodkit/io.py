"""Module files and canonical JSON.

A module file is one JSON object

    {"action": {gen: [[...], ...]}, "algebra": {"case": "A", "r": 1}, "dim": n,
     "field": "F3", "format_version": 1, "label": "..."}

written with sorted keys, compact separators and a trailing newline, so
file -> module -> file reproduces the same bytes.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import presentation_from_descriptor
from .errors import InvalidModule
from .module import ModuleRep, module_violations

FORMAT_VERSION = 1


def _plain(obj):
    """numpy scalars/arrays -> python, recursively."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def canonical_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"


def module_to_dict(m: ModuleRep) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "algebra": m.algebra.descriptor(),
        "dim": m.dim,
        "field": m.field.name,
        "action": {g: m[g].tolist() for g in m.algebra.generators},
        "label": m.label,
    }


def module_to_json(m: ModuleRep) -> str:
    return canonical_json(module_to_dict(m))


def _fail(msg: str, violations=()):
    raise InvalidModule(msg, violations)


def module_from_dict(d: dict, check: bool = True) -> ModuleRep:
    if not isinstance(d, dict):
        _fail("module file must be a JSON object")
    for key in ("format_version", "algebra", "dim", "action"):
        if key not in d:
            _fail(f"missing field {key!r}")
    if d["format_version"] != FORMAT_VERSION:
        _fail(f"unsupported format_version {d['format_version']!r}")
    try:
        a = presentation_from_descriptor(d["algebra"])
    except (KeyError, TypeError, ValueError) as e:
        _fail(f"bad algebra descriptor: {e}")
    if "field" in d and d["field"] != a.field.name:
        _fail(f"field {d['field']!r} does not match algebra field {a.field.name}")
    n = d["dim"]
    if not isinstance(n, int) or n < 0:
        _fail(f"dim must be a non-negative integer, got {n!r}")
    action = d["action"]
    if not isinstance(action, dict) or set(action) != set(a.generators):
        _fail(f"action must give exactly the generators {list(a.generators)}")
    mats = {}
    q = a.field.cardinality
    for g in a.generators:
        try:
            mat = np.array(action[g], dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), dtype=np.int64)
        except (ValueError, TypeError):
            _fail(f"matrix for {g} is not a {n}x{n} integer matrix")
        if mat.size and (mat.min() < 0 or mat.max() >= q):
            _fail(f"matrix for {g} has entries outside 0..{q - 1}")
        mats[g] = mat
    m = ModuleRep(a, mats, label=str(d.get("label", "")))
    if check:
        bad = module_violations(m)
        if bad:
            _fail("action violates the defining relations", bad)
    return m


def module_from_json(text: str, check: bool = True) -> ModuleRep:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        _fail(f"not valid JSON: {e}")
    return module_from_dict(d, check)


def read_module(path, check: bool = True) -> ModuleRep:
    return module_from_json(Path(path).read_text(encoding="utf-8"), check)


def write_module(m: ModuleRep, path) -> None:
    Path(path).write_text(module_to_json(m), encoding="utf-8")


def write_json(obj, path) -> None:
    Path(path).write_text(canonical_json(obj), encoding="utf-8")


__all__ = [
    "FORMAT_VERSION",
    "canonical_json",
    "module_to_dict",
    "module_to_json",
    "module_from_dict",
    "module_from_json",
    "read_module",
    "write_module",
    "write_json",
]
