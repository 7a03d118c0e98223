"""JSON schemas for inputs and solution documents.

Indices are 1-based in files.  Serialization is deterministic: fixed key
order, two-space indentation, floats at 17 significant digits (lossless for
binary64), and NaN/Infinity rejected on both ends.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .basis import BasisSet
from .errors import InvalidInputError
from .mesh import Triangulation, build_triangulation
from .network import SolutionNetwork
from .solver import SolveReport


def _reject_constant(name: str):
    raise InvalidInputError(f"non-finite number {name!r} not accepted")


def loads_json(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc


def read_json(path) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_json(fh.read())


def _require_number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInputError(f"{what} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise InvalidInputError(f"{what} must be finite, got {value!r}")
    return float(value)


def parse_input_document(doc: Any) -> Triangulation:
    """Validate an input document and build the triangulation (0-based inside)."""
    if not isinstance(doc, dict):
        raise InvalidInputError("input document must be a JSON object")
    raw_points = doc.get("points")
    raw_triangles = doc.get("triangles")
    if not isinstance(raw_points, list) or not isinstance(raw_triangles, list):
        raise InvalidInputError("input document needs 'points' and 'triangles' lists")
    points = []
    for k, rp in enumerate(raw_points):
        if not isinstance(rp, dict):
            raise InvalidInputError(f"point {k + 1} must be an object with x, y, z")
        points.append(tuple(_require_number(rp.get(axis), f"point {k + 1}.{axis}")
                            for axis in ("x", "y", "z")))
    triangles = []
    for k, rt in enumerate(raw_triangles):
        if not isinstance(rt, list) or len(rt) != 3:
            raise InvalidInputError(f"triangle {k + 1} must be a list of three indices")
        tri = []
        for v in rt:
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidInputError(f"triangle {k + 1} has a non-integer index {v!r}")
            if not 1 <= v <= len(points):
                raise InvalidInputError(f"triangle {k + 1} index {v} out of range")
            tri.append(v - 1)
        triangles.append(tri)
    return build_triangulation(points, triangles)


def input_echo(tri: Triangulation) -> dict:
    return {
        "points": [{"x": p.x, "y": p.y, "z": p.z} for p in tri.points],
        "triangles": [[v + 1 for v in t] for t in tri.triangles],
    }


def solution_document(tri: Triangulation, basis: BasisSet, net: SolutionNetwork,
                      report: SolveReport) -> dict:
    return {
        "input": input_echo(tri),
        "p": report.p,
        "q": report.q,
        "alpha": [
            {"i": b.vertex + 1, "s": b.slot, "value": float(a)}
            for b, a in zip(basis.networks, net.alpha)
        ],
        "edges": [
            {
                "i": tri.edges[c.edge].i + 1,
                "j": tri.edges[c.edge].j + 1,
                "length": tri.edges[c.edge].length,
                "a": c.w.a,
                "b": c.w.b,
                "c1": c.c1,
            }
            for c in net.curves
        ],
        "norm": report.norm,
        "report": {
            "converged": report.converged,
            "iterations": list(report.stage_iterations),
            "q_path": list(report.q_path),
            "residual": report.final_residual,
            "objective": report.final_objective,
        },
    }


def parse_solution_document(doc: Any) -> dict:
    """Validate a solution document; returns its parsed pieces."""
    if not isinstance(doc, dict):
        raise InvalidInputError("solution document must be a JSON object")
    for key in ("input", "p", "q", "alpha", "edges", "norm", "report"):
        if key not in doc:
            raise InvalidInputError(f"solution document missing '{key}'")
    tri = parse_input_document(doc["input"])
    p = _require_number(doc["p"], "p")
    q = _require_number(doc["q"], "q")
    if p <= 1.0:
        raise InvalidInputError(f"p must exceed 1, got {p}")
    alpha_entries = doc["alpha"]
    if not isinstance(alpha_entries, list):
        raise InvalidInputError("'alpha' must be a list")
    alpha = []
    for k, entry in enumerate(alpha_entries):
        if not isinstance(entry, dict):
            raise InvalidInputError(f"alpha entry {k} must be an object")
        _require_number(entry.get("i"), f"alpha[{k}].i")
        _require_number(entry.get("s"), f"alpha[{k}].s")
        alpha.append(_require_number(entry.get("value"), f"alpha[{k}].value"))
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise InvalidInputError("'edges' must be a list")
    for k, entry in enumerate(edges):
        if not isinstance(entry, dict):
            raise InvalidInputError(f"edge record {k} must be an object")
        for fieldname in ("i", "j", "length", "a", "b", "c1"):
            _require_number(entry.get(fieldname), f"edges[{k}].{fieldname}")
    report = doc["report"]
    if not isinstance(report, dict) or "converged" not in report:
        raise InvalidInputError("'report' must be an object with 'converged'")
    return {
        "tri": tri,
        "p": p,
        "q": q,
        "alpha": np.array(alpha, dtype=float),
        "alpha_entries": alpha_entries,
        "edges": edges,
        "norm": _require_number(doc["norm"], "norm"),
        "report": report,
    }


# -- deterministic serialization --------------------------------------------

def format_float(x: float) -> str:
    if isinstance(x, bool):  # bool is an int subclass; keep it out of numbers
        raise InvalidInputError("boolean where number expected")
    if math.isnan(x) or math.isinf(x):
        raise InvalidInputError("cannot serialize non-finite number")
    return format(float(x), ".17g")


def _dump(obj: Any, indent: int, out: list) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, value) in enumerate(obj.items()):
            out.append(f'{pad}  {json.dumps(key)}: ')
            _dump(value, indent + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for k, value in enumerate(obj):
            out.append(pad + "  ")
            _dump(value, indent + 1, out)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif obj is None:
        out.append("null")
    else:
        raise InvalidInputError(f"cannot serialize {type(obj).__name__}")


def dumps_deterministic(doc: Any) -> str:
    out: list[str] = []
    _dump(doc, 0, out)
    out.append("\n")
    return "".join(out)


def write_json(path, doc: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_deterministic(doc))
