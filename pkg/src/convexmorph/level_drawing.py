"""Level planar drawings: hierarchies, convex redrawing and strictification.

Coordinates inside this module are frame coordinates ``(X, Y)`` for the
hierarchy direction ``d``: ``Y = p . d`` is the level value and ``X`` runs
along the level lines (see :func:`convexmorph.geometry.to_frame`).  The
frame is positively oriented, so orientation signs are the same in both
coordinate systems.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from gmpy2 import mpq
from scipy.optimize import linprog

from .errors import (
    GraphError,
    InfeasiblePolygon,
    NonGenericDirection,
    NotHierarchicalSt,
    NotStrictlyConvexGraph,
    ValidationExhausted,
)
from .geometry import (
    Direction,
    Drawing,
    check_drawing,
    face_walk,
    from_frame,
    polygon_status,
    projection,
    to_frame,
)
from .graph_core import PlaneGraph, smooth

log = logging.getLogger(__name__)


# -- hierarchies -------------------------------------------------------------

@dataclass(frozen=True)
class Hierarchy:
    """Direction, ordered level values and vertex-to-level assignment.

    Attributes:
        direction: The oriented direction ``d``.
        levels: Strictly increasing level values ``p . d``.
        assignment: Vertex to index into ``levels``.
    """

    direction: Direction
    levels: tuple
    assignment: Mapping[int, int]

    def y(self, v: int) -> mpq:
        return self.levels[self.assignment[v]]

    def to_dict(self) -> dict:
        return {
            "direction": [str(self.direction[0]), str(self.direction[1])],
            "levels": [str(x) for x in self.levels],
            "assignment": {str(v): i for v, i in self.assignment.items()},
        }

    def restrict(self, vertices) -> "Hierarchy":
        """Hierarchy on a vertex subset, keeping only the used levels."""
        vs = set(vertices)
        used = sorted({self.assignment[v] for v in vs})
        remap = {old: new for new, old in enumerate(used)}
        return Hierarchy(
            self.direction,
            tuple(self.levels[i] for i in used),
            {v: remap[self.assignment[v]] for v in vs},
        )


def hierarchy_from_drawing(graph: PlaneGraph, drawing: Mapping, d: Direction) -> Hierarchy:
    """Levels through the vertices of ``drawing``, orthogonal to ``d``.

    Raises:
        NonGenericDirection: Two adjacent vertices share a level.
    """
    proj = {v: projection(drawing[v], d) for v in graph.vertices}
    for u, v in graph.edges:
        if proj[u] == proj[v]:
            raise NonGenericDirection(f"edge ({u},{v}) is orthogonal to the direction")
    levels = tuple(sorted(set(proj.values())))
    index = {y: i for i, y in enumerate(levels)}
    return Hierarchy(d, levels, {v: index[proj[v]] for v in graph.vertices})


def is_st_sequence(values) -> bool:
    k = len(values)
    diffs = [values[(i + 1) % k] - values[i] for i in range(k)]
    if any(x == 0 for x in diffs):
        return False
    return sum(1 for i in range(k) if (diffs[i] > 0) != (diffs[i - 1] > 0)) == 2


def is_hierarchical_st(graph: PlaneGraph, h: Hierarchy) -> bool:
    """Every face splits into two level-monotone paths between source and sink."""
    return all(
        is_st_sequence([h.assignment[v] for v in f.boundary]) for f in graph.faces
    )


def frame(drawing: Mapping, d: Direction) -> dict:
    return {v: to_frame(p, d) for v, p in drawing.items()}


def unframe(coords: Mapping, d: Direction) -> Drawing:
    return {v: from_frame(xy, d) for v, xy in coords.items()}


def on_levels(drawing: Mapping, h: Hierarchy) -> bool:
    return all(projection(drawing[v], h.direction) == h.y(v) for v in h.assignment)


# -- redrawing by linear programming ------------------------------------------

def _round(x: float, bits: int) -> mpq:
    if bits >= 1074:
        return mpq(x)
    return mpq(int(round(x * (1 << bits))), 1 << bits)


def _place_chains(graph, mp, coords, ys) -> None:
    for path in mp.edge_to_path.values():
        if len(path) <= 2:
            continue
        x, y = path[0], path[-1]
        (X0, Y0), (X1, Y1) = coords[x], coords[y]
        for w in path[1:-1]:
            Yw = ys[w]
            if not (min(Y0, Y1) < Yw < max(Y0, Y1)):
                raise InfeasiblePolygon(f"chain vertex {w} is not between its ends")
            coords[w] = (X0 + (Yw - Y0) / (Y1 - Y0) * (X1 - X0), Yw)


def lp_level_drawing(
    graph: PlaneGraph,
    h: Hierarchy,
    outer: Mapping | None = None,
    mode: str = "strict",
) -> Drawing:
    """Convex level drawing maximizing the smallest normalized corner turn.

    Every corner turn is linear in the unknown ``X`` coordinates once the
    levels are fixed, so the best drawing is a linear program.  Internal
    degree-2 chains are smoothed first and placed on their segments after.
    The float solution is rounded to dyadic rationals and re-verified
    exactly.

    Args:
        graph: The plane graph.
        h: Its hierarchy.
        outer: Fixed positions for the outer vertices, or ``None`` to let
            the outer polygon move along the levels as well.
        mode: ``"strict"`` or ``"convex"``: the class the result must have.

    Raises:
        InfeasiblePolygon: No drawing of the requested class was found.
    """
    d = h.direction
    ys = {v: h.y(v) for v in graph.vertices}
    try:
        core, mp = smooth(graph, "internal") if any(
            graph.degree(v) == 2 and graph.is_internal(v) for v in graph.vertices
        ) else (graph, None)
    except GraphError as exc:
        raise InfeasiblePolygon(f"cannot smooth internal chains: {exc}") from exc
    fixed: dict[int, mpq] = {}
    if outer is not None:
        for v in graph.outer_vertices:
            X, Y = to_frame(outer[v], d)
            if Y != ys[v]:
                raise InfeasiblePolygon(f"outer vertex {v} is off its level")
            fixed[v] = X
    free = [v for v in core.vertices if v not in fixed]
    col = {v: i for i, v in enumerate(free)}
    ylo, yhi = min(ys.values()), max(ys.values())
    yspan = yhi - ylo
    if fixed:
        xlo = min(fixed.values())
        xspan = max(fixed.values()) - xlo or yspan
    else:
        xlo, xspan = mpq(0), yspan
    yn = {v: float((ys[v] - ylo) / yspan) for v in core.vertices}
    xn = {v: float((X - xlo) / xspan) for v, X in fixed.items()}
    rows, rhs = [], []
    for fi in range(len(core.faces)):
        walk = face_walk(core, fi)
        k = len(walk)
        for i in range(k):
            a, b, c = walk[i - 1], walk[i], walk[(i + 1) % k]
            coef = {a: -(yn[c] - yn[b]), b: yn[c] - yn[a], c: -(yn[b] - yn[a])}
            w = max(abs(yn[b] - yn[a]), abs(yn[c] - yn[b]))
            row = np.zeros(len(free) + 1)
            const = 0.0
            for v, cf in coef.items():
                if v in col:
                    row[col[v]] -= cf
                else:
                    const += cf * xn[v]
            row[-1] = w
            rows.append(row)
            rhs.append(const)
    cost = np.zeros(len(free) + 1)
    cost[-1] = -1.0
    bounds = [(-4.0, 5.0)] * len(free) + [(None, 1.0)]
    res = linprog(
        cost,
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=bounds,
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        raise InfeasiblePolygon(f"level drawing LP failed: {res.message}")
    t_star = -res.fun
    log.debug("level drawing LP optimum %.3e on %d vertices", t_star, core.n)
    best = None
    for bits in (40, 60, 1074):
        coords = {}
        for v in core.vertices:
            X = fixed[v] if v in fixed else xlo + _round(float(res.x[col[v]]), bits) * xspan
            coords[v] = (X, ys[v])
        if mp is not None:
            _place_chains(graph, mp, coords, ys)
        drawing = unframe(coords, d)
        rep = check_drawing(graph, drawing)
        if rep.passes(mode):
            return drawing
        if rep.is_convex and best is None:
            best = drawing
    if mode == "convex" and best is not None:
        return best
    raise InfeasiblePolygon(f"no {mode} level drawing found (LP optimum {t_star:.3e})")


def convex_level_drawing(graph: PlaneGraph, h: Hierarchy, outer_polygon: Mapping) -> Drawing:
    """Convex level planar drawing whose outer cycle is ``outer_polygon``.

    Args:
        graph: A convex plane graph.
        h: A hierarchical-st hierarchy for ``graph``.
        outer_polygon: Positions of the outer vertices, each on its level.

    Raises:
        NotHierarchicalSt: Some face is not an st-face.
        InfeasiblePolygon: The polygon does not fit the levels or no convex
            drawing with it exists.
    """
    if not is_hierarchical_st(graph, h):
        raise NotHierarchicalSt("some face has several sources or sinks")
    outer = {v: outer_polygon[v] for v in graph.outer_vertices}
    walk = face_walk(graph, graph.face_index_of_dart(*graph.outer_dart))
    flat, bad, winds = polygon_status([outer[v] for v in walk])
    if bad or not winds:
        raise InfeasiblePolygon("outer polygon is not convex in the embedding order")
    return lp_level_drawing(graph, h, outer, mode="convex")


# -- strictification ---------------------------------------------------------

@dataclass
class FlatPathContext:
    """A maximal run of vertices flat in one face, with its surroundings.

    Attributes:
        path: Vertices ``x, ..., y`` ordered by increasing level.
        face: Index of the face the interior vertices are flat in.
        side: ``"left"`` if that face lies left of the upward path.
        elongation: Monotone source-to-sink path extending ``path``.
        region_left: Internal vertices strictly left of the elongation.
        region_right: Internal vertices strictly right of the elongation.
        epsilon: Bulge distance used when the path was straightened.
        flat_before: Flat angles in the drawing before the bulge.
        flat_after: Flat angles right after it.
        coordinate_bits: Largest numerator or denominator bit length in the
            drawing right after the bulge.
    """

    path: tuple
    face: int
    side: str
    elongation: tuple = ()
    region_left: frozenset = frozenset()
    region_right: frozenset = frozenset()
    epsilon: mpq | None = None
    flat_before: int = 0
    flat_after: int = 0
    coordinate_bits: int = 0

    @property
    def interior(self) -> tuple:
        return self.path[1:-1]


def _extreme_neighbor(graph: PlaneGraph, h: Hierarchy, v: int, up: bool, right: bool) -> int | None:
    """Leftmost/rightmost top/bottom neighbour read off the rotation."""
    lv = h.assignment[v]
    nbrs = graph.neighbors(v)
    same = [w for w in nbrs if (h.assignment[w] > lv) == up]
    if not same:
        return None
    outer = graph.face_index_of_dart(*graph.outer_dart)
    for x in same:
        # clockwise: top block runs left to right, bottom block right to left
        if up == right:
            y = graph.cw_succ(v, x)
            gap_outer = graph.face_index_of_dart(x, v) == outer
        else:
            y = graph.ccw_succ(v, x)
            gap_outer = graph.face_index_of_dart(v, x) == outer
        other_side = (h.assignment[y] > lv) != up
        if other_side or (len(same) == len(nbrs) and gap_outer):
            return x
    return same[0]


def _extreme_path(graph, h, v, up: bool, right: bool) -> list[int]:
    path = [v]
    while True:
        w = _extreme_neighbor(graph, h, path[-1], up, right)
        if w is None:
            return path
        path.append(w)


def _x_at(coords, path, yv):
    """X coordinate where a monotone path crosses level ``yv``."""
    for a, b in zip(path, path[1:]):
        (Xa, Ya), (Xb, Yb) = coords[a], coords[b]
        if Ya == yv:
            return Xa
        if Ya < yv < Yb:
            return Xa + (yv - Ya) / (Yb - Ya) * (Xb - Xa)
    last = coords[path[-1]]
    return last[0] if last[1] == yv else None


def flat_paths(graph: PlaneGraph, h: Hierarchy, drawing: Mapping) -> list[FlatPathContext]:
    """All maximal left-flat and right-flat paths with their regions."""
    d = h.direction
    coords = frame(drawing, d)
    rep = check_drawing(graph, drawing)
    flat_by_face: dict[int, set[int]] = {}
    for v, fi in rep.flat_corners:
        flat_by_face.setdefault(fi, set()).add(v)
    s = min(graph.vertices, key=lambda v: h.assignment[v])
    left_chain = set(_extreme_path(graph, h, s, True, False))
    right_chain = set(_extreme_path(graph, h, s, True, True))
    out = []
    for fi in sorted(flat_by_face):
        walk = face_walk(graph, fi)
        flats = flat_by_face[fi]
        k = len(walk)
        start = next(i for i in range(k) if walk[i] not in flats)
        i = 0
        while i < k:
            v = walk[(start + i) % k]
            if v in flats:
                run = [walk[(start + i - 1) % k]]
                while walk[(start + i) % k] in flats:
                    run.append(walk[(start + i) % k])
                    i += 1
                run.append(walk[(start + i) % k])
                upward = h.assignment[run[-1]] > h.assignment[run[0]]
                path = tuple(run if upward else run[::-1])
                side = "left" if upward else "right"
                out.append(_context(graph, h, coords, path, fi, side, left_chain, right_chain))
            else:
                i += 1
    return out


def _context(graph, h, coords, path, fi, side, left_chain, right_chain) -> FlatPathContext:
    right = side == "left"
    x, y = path[0], path[-1]
    below = _extreme_path(graph, h, x, False, right)[::-1]
    above = _extreme_path(graph, h, y, True, right)
    elong = tuple(below[:-1]) + path + tuple(above[1:])
    on = set(elong)
    lefts, rights = set(), set()
    for w in graph.vertices:
        if w in on:
            continue
        xe = _x_at(coords, elong, coords[w][1])
        if xe is None:
            continue
        if coords[w][0] > xe and w not in right_chain:
            rights.add(w)
        elif coords[w][0] < xe and w not in left_chain:
            lefts.add(w)
    return FlatPathContext(path, fi, side, elong, frozenset(lefts), frozenset(rights))


def select_flat_path(contexts: list[FlatPathContext]) -> FlatPathContext:
    """Left-flat path with the fewest vertices right of it (else the mirror)."""
    lefts = [c for c in contexts if c.side == "left"]
    if lefts:
        return min(lefts, key=lambda c: (len(c.region_right), c.path))
    return min(contexts, key=lambda c: (len(c.region_left), c.path))


def _bulge(coords, path, eps, sign) -> dict:
    (Xx, Yx), (Xy, Yy) = coords[path[0]], coords[path[-1]]
    out = dict(coords)
    for w in path[1:-1]:
        Yw = coords[w][1]
        s = (Yw - Yx) / (Yy - Yx)
        out[w] = (Xx + s * (Xy - Xx) + sign * eps * 4 * s * (1 - s), Yw)
    return out


def _initial_epsilon(graph, coords, ctx) -> mpq:
    x, y = ctx.path[0], ctx.path[-1]
    (Xx, Yx), (Xy, Yy) = coords[x], coords[y]
    inner = set(ctx.interior)
    near = set()
    for w in inner:
        for f in graph.faces:
            if w in f.vertices:
                near.update(f.vertices)
    gaps = []
    for w in near - inner - {x, y}:
        Xw, Yw = coords[w]
        if Yx < Yw < Yy:
            gaps.append(abs(Xw - (Xx + (Yw - Yx) / (Yy - Yx) * (Xy - Xx))))
    gaps = [g for g in gaps if g > 0]
    if gaps:
        return min(gaps) / 2
    xs = [c[0] for c in coords.values()]
    return (max(xs) - min(xs)) / 2


def strictify(
    graph: PlaneGraph,
    h: Hierarchy,
    drawing: Mapping,
    max_halvings: int = 200,
    trace: list | None = None,
) -> Drawing:
    """Turn a convex level drawing into a strictly convex one on the same levels.

    Repeatedly picks a flat path, moves its interior vertices along their
    levels onto a convex parabolic chain through its end vertices, and
    halves the bulge until the new drawing is convex, creates no new flat
    angle and leaves the moved vertices convex everywhere.

    Args:
        graph: A strictly convex graph (no internal degree-2 vertex).
        h: Hierarchy the drawing respects.
        drawing: Convex level drawing with strictly convex outer polygon.
        max_halvings: Cap on halvings of the bulge per iteration.
        trace: Optional list receiving each chosen :class:`FlatPathContext`.

    Raises:
        NotStrictlyConvexGraph: ``graph`` has an internal degree-2 vertex.
        ValidationExhausted: No admissible bulge was found.
    """
    if any(graph.degree(v) == 2 and graph.is_internal(v) for v in graph.vertices):
        raise NotStrictlyConvexGraph("internal degree-2 vertex cannot be strictly convex")
    d = h.direction
    current = dict(drawing)
    rep = check_drawing(graph, current)
    if not rep.is_convex:
        raise ValidationExhausted("input drawing is not convex")
    while rep.flat_corners:
        before = set(rep.flat_corners)
        ctx = select_flat_path(flat_paths(graph, h, current))
        coords = frame(current, d)
        sign = 1 if ctx.side == "left" else -1
        eps = _initial_epsilon(graph, coords, ctx)
        moved = set(ctx.interior)
        for _ in range(max_halvings):
            cand = unframe(_bulge(coords, ctx.path, eps, sign), d)
            new = check_drawing(graph, cand)
            after = set(new.flat_corners)
            if (
                new.is_convex
                and after <= before
                and not any(v in moved for v, _ in after)
            ):
                break
            eps /= 2
        else:
            raise ValidationExhausted(f"no bulge straightens {ctx.path}")
        if len(after) >= len(before):
            raise ValidationExhausted("flat angle count did not decrease")
        ctx.epsilon = eps
        ctx.flat_before, ctx.flat_after = len(before), len(after)
        ctx.coordinate_bits = max(
            max(c.numerator.bit_length(), c.denominator.bit_length()) for p in cand.values() for c in p
        )
        if trace is not None:
            trace.append(ctx)
        current, rep = cand, new
    return current
