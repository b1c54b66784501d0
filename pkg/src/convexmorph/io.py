"""JSON interchange for graphs, drawings, hierarchies, morphs and fixtures.

Coordinates are written as ``[x_num, x_den, y_num, y_den]`` integer lists so
that exact values survive the file boundary.  Readers also accept a pair of
decimal or fraction strings such as ``["3/2", "-0.25"]``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Sequence

from gmpy2 import mpq

from .corpus import Fixture
from .graph_core import PlaneGraph, build_plane_graph
from .geometry import Drawing, Point, to_rational
from .level_drawing import Hierarchy


def _rational(x) -> mpq:
    return x if isinstance(x, type(mpq(0))) else to_rational(x)


# -- graphs ------------------------------------------------------------------

def graph_to_json(graph: PlaneGraph) -> dict:
    return {
        "vertices": list(graph.vertices),
        "rotation": {str(v): list(n) for v, n in graph.rotation.items()},
        "outer_face": list(graph.outer_face.boundary),
    }


def graph_from_json(data: Mapping) -> PlaneGraph:
    rotation = {int(v): [int(w) for w in n] for v, n in data["rotation"].items()}
    return build_plane_graph(data["vertices"], rotation, data["outer_face"])


# -- drawings ----------------------------------------------------------------

def point_to_json(p: Point) -> list[int]:
    x, y = _rational(p[0]), _rational(p[1])
    return [int(x.numerator), int(x.denominator), int(y.numerator), int(y.denominator)]


def point_from_json(value: Sequence) -> Point:
    if len(value) == 4:
        if not all(isinstance(c, int) for c in value):
            raise ValueError(f"rational coordinates must be integers: {value}")
        return (mpq(value[0], value[1]), mpq(value[2], value[3]))
    if len(value) == 2:
        if any(isinstance(c, float) for c in value):
            raise ValueError("float coordinates are not exact; use strings")
        return (to_rational(value[0]), to_rational(value[1]))
    raise ValueError(f"cannot read a point from {value!r}")


def drawing_to_json(drawing: Mapping) -> dict:
    return {"positions": {str(v): point_to_json(p) for v, p in sorted(drawing.items())}}


def drawing_from_json(data: Mapping) -> Drawing:
    pos = data["positions"] if "positions" in data else data
    return {int(v): point_from_json(p) for v, p in pos.items()}


# -- hierarchies -------------------------------------------------------------

def hierarchy_from_json(data: Mapping) -> Hierarchy:
    d = tuple(to_rational(c) for c in data["direction"])
    levels = tuple(to_rational(c) for c in data["levels"])
    return Hierarchy(d, levels, {int(v): int(i) for v, i in data["assignment"].items()})


def hierarchy_to_json(h: Hierarchy) -> dict:
    return h.to_dict()


# -- morphs ------------------------------------------------------------------

def morph_to_json(morph, certificates=None, full: bool = False) -> dict:
    """``{"graph", "frames", "directions", "certificates"}`` for a morph."""
    return {
        "graph": graph_to_json(morph.graph),
        "frames": [drawing_to_json(f)["positions"] for f in morph.frames],
        "directions": [
            None if d is None else [str(d[0]), str(d[1])] for d in morph.step_directions
        ],
        "certificates": [c.to_dict(full) for c in certificates] if certificates else [],
    }


def morph_from_json(data: Mapping, graph: PlaneGraph | None = None):
    """Rebuild a :class:`~convexmorph.morph_engine.Morph` from its JSON form."""
    from .morph_engine import Morph

    g = graph if graph is not None else graph_from_json(data["graph"])
    frames = [drawing_from_json(f) for f in data["frames"]]
    return Morph(g, frames)


# -- fixtures ----------------------------------------------------------------

def fixture_to_json(fx: Fixture) -> dict:
    return {
        "name": fx.name,
        "kind": fx.kind,
        "graph": graph_to_json(fx.graph),
        "source": drawing_to_json(fx.source),
        "target": drawing_to_json(fx.target),
    }


def fixture_from_json(data: Mapping) -> Fixture:
    return Fixture(
        data["name"],
        graph_from_json(data["graph"]),
        drawing_from_json(data["source"]),
        drawing_from_json(data["target"]),
        data["kind"],
    )


# -- files -------------------------------------------------------------------

def dumps(data: Any) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def write_json(path: str | Path, data: Any) -> None:
    Path(path).write_text(dumps(data))


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text())
