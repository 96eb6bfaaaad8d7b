"""JSON problem documents.

Layout (all nested arrays are listed layer by layer, lowest first)::

    {
      "stencil": [[[c000, c100, ...], [c010, ...]], ...],   # [z][y][x]
      "beta":    [x_beta, y_beta],
      "domain":  {"Bx": 4, "By": 3},
      "target":  [x, y, z],                                  # Cartesian
      "initial": [[[1.0, 2.0, ...], [4.0, null, ...]], ...], # [z][y][x]
      "rhs_g":   [[[0.0, ...], ...], ...]                    # optional, [z0][y0][x0]
    }

``null`` marks a cell the solver computes; every other cell must hold a number.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CauchyProblem,
    DomainSpec,
    Field,
    anchor_shape,
    make_apex,
    make_stencil,
)
from .errors import ExtentViolation, ParseError, ShapeMismatch


@dataclass(frozen=True)
class ProblemFile:
    problem: CauchyProblem
    target: tuple[int, int, int]


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _ints(value, n: int, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or len(value) != n:
        raise ParseError(f"{what} must be a list of {n} integers")
    return tuple(_int(v, what) for v in value)


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{what} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ParseError(f"{what} must be finite, got {value!r}")
    return float(value)


def _grid(data, shape: tuple[int, int, int], what: str, allow_null: bool):
    """Read a [z][y][x] nested array into ``[x, y, z]`` values and a known mask."""
    nz, ny, nx = shape
    values = np.zeros((nx, ny, nz))
    known = np.ones((nx, ny, nz), dtype=bool)
    if not isinstance(data, list) or len(data) != nz:
        raise ShapeMismatch(f"{what} must have {nz} layers")
    for z, layer in enumerate(data):
        if not isinstance(layer, list) or len(layer) != ny:
            raise ShapeMismatch(f"{what} layer {z} must have {ny} rows")
        for y, row in enumerate(layer):
            if not isinstance(row, list) or len(row) != nx:
                raise ShapeMismatch(f"{what} layer {z} row {y} must have {nx} entries")
            for x, v in enumerate(row):
                if v is None and allow_null:
                    known[x, y, z] = False
                else:
                    values[x, y, z] = _number(v, f"{what} entry ({x}, {y}, {z})")
    return values, known


def parse_document(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("problem document must be a JSON object")
    for key in ("stencil", "beta", "domain", "target", "initial"):
        if key not in doc:
            raise ParseError(f"missing member {key!r}")

    stencil = make_stencil(doc["stencil"])
    xb, yb = _ints(doc["beta"], 2, "beta")
    apex = make_apex(stencil, xb, yb)

    dom = doc["domain"]
    if not isinstance(dom, dict) or "Bx" not in dom or "By" not in dom:
        raise ParseError("domain must be an object with members Bx and By")
    Bx, By = _int(dom["Bx"], "domain.Bx"), _int(dom["By"], "domain.By")
    if not (stencil.bx < Bx and stencil.by < By):
        raise ExtentViolation(
            f"stencil extents (bx={stencil.bx}, by={stencil.by}) must be strictly "
            f"smaller than (Bx={Bx}, By={By})"
        )
    target = _ints(doc["target"], 3, "target")
    tx, ty, tz = target
    if not (0 <= tx <= Bx and 0 <= ty <= By and tz >= 0):
        raise ExtentViolation(f"target {target} outside the domain")
    domain = DomainSpec(Bx, By, tz)

    values, known = _grid(doc["initial"], (tz + 1, By + 1, Bx + 1), "initial", True)
    nxa, nya, nza = anchor_shape(domain, stencil)
    if doc.get("rhs_g") is None:
        rhs = np.zeros((nxa, nya, nza))
    else:
        rhs, _ = _grid(doc["rhs_g"], (nza, nya, nxa), "rhs_g", False)
    rhs.flags.writeable = False

    problem = CauchyProblem(stencil, apex, domain, Field(values, known), rhs)
    return ProblemFile(problem, target)


def parse_problem(text: str) -> CauchyProblem:
    return parse_document(text).problem


def load_document(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def dump_problem(problem: CauchyProblem, target=None) -> str:
    """Serialize ``problem``; ``target`` defaults to ``(0, 0, z_max)``."""
    d = problem.domain
    if target is None:
        target = (0, 0, d.z_max)
    if int(target[2]) != d.z_max:
        raise ExtentViolation(f"target z must equal z_max={d.z_max}")
    vals = problem.initial.values.transpose(2, 1, 0)
    known = problem.initial.known_mask.transpose(2, 1, 0)
    initial = [
        [[float(v) if k else None for v, k in zip(vrow, krow)] for vrow, krow in zip(vl, kl)]
        for vl, kl in zip(vals, known)
    ]
    doc = {
        "stencil": problem.stencil.coeffs.tolist(),
        "beta": [problem.apex.x_beta, problem.apex.y_beta],
        "domain": {"Bx": d.Bx, "By": d.By},
        "target": [int(t) for t in target],
        "initial": initial,
        "rhs_g": problem.rhs_g.transpose(2, 1, 0).tolist(),
    }
    return json.dumps(doc)


def format_layer_csv(field: Field, k: int) -> str:
    """One layer as CSV: header ``layer=<k>``, then one row per y, columns x."""
    lines = [f"layer={k}"]
    for y in range(field.values.shape[1]):
        lines.append(",".join(repr(float(v)) for v in field.values[:, y, k]))
    return "\n".join(lines) + "\n"
