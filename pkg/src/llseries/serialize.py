"""JSON forms of instances, extension grids and traces.

Scalars are strings: "p/q" or an integer over Q, a residue in [0, p) over F_p.
Matrices are row-major lists of such strings.  Instance files look like

    {"d": 4, "r": 1, "field": "rational",
     "V_X1": [[...]], "V_X2": [[...]], "V_X3": [[...]]}

with each V_Xq an (r+1) x (d+1) basis matrix of polynomial coefficients,
lowest degree first.  Grid files carry the same header plus
``"grid": {"i,l": basis matrix}`` in grid order.
"""

from __future__ import annotations

import json
from typing import Any

from .curve import ChainCurve
from .field import field_from_json
from .kernels import RefinedSeries, SeriesError
from .linalg import Subspace


def _layout(obj: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ["%s%s: %s" % (pad, json.dumps(str(k)), _layout(v, depth + 1)) for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [pad + _layout(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(obj, separators=(", ", ": "))


def dumps(obj: Any) -> str:
    """The one JSON layout used for every file the package writes.

    Objects and nested lists get one entry per line; flat lists (matrix rows,
    points) stay on a single line.
    """
    return _layout(obj, 0) + "\n"


def matrix_to_json(rows, field) -> list[list[str]]:
    return [[field.format(x) for x in row] for row in rows]


def subspace_from_json(rows, n: int, field) -> Subspace:
    if not isinstance(rows, list) or any(not isinstance(row, list) for row in rows):
        raise SeriesError("a basis must be a list of rows")
    parsed = []
    for row in rows:
        if len(row) != n:
            raise SeriesError("basis row of length %d, expected %d" % (len(row), n))
        parsed.append([field.parse(str(x)) for x in row])
    return Subspace.span(parsed, n, field)


def instance_to_json(h: RefinedSeries) -> dict:
    f = h.field
    return {
        "d": h.d,
        "r": h.r,
        "field": f.to_json(),
        "V_X1": matrix_to_json(h.V1.basis, f),
        "V_X2": matrix_to_json(h.V2.basis, f),
        "V_X3": matrix_to_json(h.V3.basis, f),
    }


def instance_from_json(obj: dict, field=None) -> RefinedSeries:
    """Read an instance; ``field`` overrides the one recorded in the file."""
    try:
        d, r = obj["d"], obj["r"]
        rows = [obj["V_X1"], obj["V_X2"], obj["V_X3"]]
    except (KeyError, TypeError) as exc:
        raise SeriesError("instance is missing field %s" % exc) from exc
    if not isinstance(d, int) or not isinstance(r, int):
        raise SeriesError("d and r must be integers")
    f = field if field is not None else field_from_json(obj.get("field", "rational"))
    curve = ChainCurve(d, f)
    spaces = [subspace_from_json(m, curve.n, f) for m in rows]
    for name, v in zip(("V_X1", "V_X2", "V_X3"), spaces):
        if v.dim != r + 1:
            raise SeriesError("%s spans dimension %d, expected r+1 = %d" % (name, v.dim, r + 1))
    return RefinedSeries(curve, *spaces)


def grid_to_json(grid) -> dict:
    h = grid.h
    out = instance_to_json(h)
    out["grid"] = {"%d,%d" % key: matrix_to_json(grid.V[key].basis, h.field) for key in h.curve.points()}
    return out


def grid_cells_from_json(obj: dict, h: RefinedSeries) -> dict:
    """The "i,l" -> subspace map of a grid file, read over the instance's field."""
    cells = obj.get("grid") if isinstance(obj, dict) else None
    if not isinstance(cells, dict):
        raise SeriesError("grid file has no 'grid' map")
    out = {}
    for key, rows in cells.items():
        try:
            i, l = (int(x) for x in key.split(","))
        except ValueError as exc:
            raise SeriesError("bad grid key %r" % key) from exc
        out[(i, l)] = subspace_from_json(rows, h.curve.n, h.field)
    return out


def trace_lines(grid) -> list[str]:
    f = grid.h.field
    lines = []
    for t in grid.traces:
        lines.append(json.dumps({
            "cell": list(t.cell),
            "case": t.case,
            "beta": t.beta,
            "u": matrix_to_json(t.u, f),
            "v": matrix_to_json(t.v, f),
        }))
    return lines
