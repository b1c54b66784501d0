"""Deterministic fixture families: plane graphs with validated drawings.

Graphs are built geometrically: the rotation system comes from an exact
angular sort of the drawn neighbours and the outer face is the traced face
with negative signed area.  Second drawings come from independent
constructions (different outer polygons, Tutte weights), and every emitted
drawing is validated with :func:`check_drawing`.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from gmpy2 import mpq

from .geometry import Drawing, Point, check_drawing, cross, make_drawing
from .graph_core import PlaneGraph, edge_key


@dataclass
class Fixture:
    """A named plane graph with a source and target drawing."""

    name: str
    graph: PlaneGraph
    source: Drawing
    target: Drawing
    kind: str  # "strict" or "convex"


# -- building graphs from coordinates ---------------------------------------

def _angle_cmp(u: Point, w: Point) -> int:
    """Order by counterclockwise angle from the positive x axis."""
    hu = 0 if u[1] > 0 or (u[1] == 0 and u[0] > 0) else 1
    hw = 0 if w[1] > 0 or (w[1] == 0 and w[0] > 0) else 1
    if hu != hw:
        return hu - hw
    c = cross(u, w)
    return -1 if c > 0 else (1 if c < 0 else 0)


def graph_from_drawing(drawing: Mapping[int, Point], edges: Sequence[tuple[int, int]]) -> PlaneGraph:
    """Plane graph whose embedding is the one induced by a planar drawing."""
    adj: dict[int, list[int]] = {v: [] for v in drawing}
    for u, v in {edge_key(*e) for e in edges}:
        adj[u].append(v)
        adj[v].append(u)
    rot = {}
    for v, nbrs in adj.items():
        p = drawing[v]
        key = functools.cmp_to_key(
            lambda a, b: _angle_cmp(
                (drawing[a][0] - p[0], drawing[a][1] - p[1]),
                (drawing[b][0] - p[0], drawing[b][1] - p[1]),
            )
        )
        rot[v] = sorted(nbrs, key=key)[::-1]  # clockwise
    first = min(v for v in rot if rot[v])
    g = PlaneGraph(rot, (first, rot[first][0]))
    for face in g.faces:
        b = face.boundary
        area = sum(cross(drawing[b[i - 1]], drawing[b[i]]) for i in range(len(b)))
        if area < 0:
            return PlaneGraph(rot, (b[0], b[1]))
    raise ValueError("drawing has no clockwise face")


# -- rational polygons -------------------------------------------------------

def circle_point(t: Fraction) -> tuple[Fraction, Fraction]:
    """Rational point on the unit circle, counterclockwise as ``t`` grows."""
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def convex_polygon(k: int, rng: random.Random, jitter: bool = True) -> list[tuple[Fraction, Fraction]]:
    """``k`` rational points on the unit circle in counterclockwise order."""
    # t = tan(theta / 2); sample angles then take rational approximations
    angles = []
    for i in range(k):
        base = 2 * np.pi * i / k
        if jitter:
            base += rng.uniform(-0.35, 0.35) * 2 * np.pi / k
        angles.append(base - np.pi + 1e-3)
    ts = sorted(Fraction(np.tan(a / 2)).limit_denominator(50) for a in angles)
    ts = sorted(set(ts))
    while len(ts) < k:  # collisions after rounding are rare; spread them
        ts.append(ts[-1] + 1)
    return [circle_point(t) for t in ts]


def affine(points, rng: random.Random):
    """Random orientation-preserving rational affine map applied to points."""
    a = Fraction(rng.randint(6, 14), 4)
    d = Fraction(rng.randint(6, 14), 4)
    b = Fraction(rng.randint(-3, 3), 4)
    c = Fraction(rng.randint(-3, 3), 8)
    if a * d - b * c <= 0:
        b = Fraction(0)
    tx, ty = Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5))
    return [(a * x + b * y + tx, c * x + d * y + ty) for x, y in points]


# -- Tutte embedding ---------------------------------------------------------

def tutte(
    graph: PlaneGraph,
    outer_positions: Mapping[int, tuple],
    rng: random.Random | None = None,
    limit: int = 10_000,
) -> Drawing:
    """Barycentric embedding with fixed outer vertices, rounded to rationals."""
    inner = [v for v in graph.vertices if v not in outer_positions]
    idx = {v: i for i, v in enumerate(inner)}
    n = len(inner)
    out: dict[int, tuple] = {v: tuple(Fraction(c) for c in p) for v, p in outer_positions.items()}
    if n:
        m = np.zeros((n, n))
        bx = np.zeros(n)
        by = np.zeros(n)
        for v in inner:
            i = idx[v]
            for w in graph.neighbors(v):
                wt = 1.0 if rng is None else rng.uniform(0.5, 2.0)
                m[i, i] += wt
                if w in idx:
                    m[i, idx[w]] -= wt
                else:
                    bx[i] += wt * float(out[w][0])
                    by[i] += wt * float(out[w][1])
        xs = np.linalg.solve(m, bx)
        ys = np.linalg.solve(m, by)
        for v in inner:
            out[v] = (
                Fraction(float(xs[idx[v]])).limit_denominator(limit),
                Fraction(float(ys[idx[v]])).limit_denominator(limit),
            )
    return make_drawing(out)


def outer_cycle_ccw(graph: PlaneGraph) -> list[int]:
    """Outer boundary in counterclockwise drawing order."""
    return list(graph.outer_face.boundary[::-1])


def strict_pair(name: str, graph: PlaneGraph, rng: random.Random, kind: str = "strict") -> Fixture:
    ring = outer_cycle_ccw(graph)
    drawings = []
    for attempt in range(20):
        poly = affine(convex_polygon(len(ring), rng), rng)
        weights = None if not drawings and attempt == 0 else rng
        d = tutte(graph, dict(zip(ring, poly)), weights)
        if check_drawing(graph, d).is_strict:
            drawings.append(d)
            if len(drawings) == 2:
                return Fixture(name, graph, drawings[0], drawings[1], kind)
    raise RuntimeError(f"could not draw {name} strictly convex")


# -- families ----------------------------------------------------------------

def cycle_graph(k: int) -> PlaneGraph:
    pts = [circle_point(Fraction(i - k // 2, 2)) for i in range(k)]
    d = make_drawing(dict(enumerate(pts)))
    return graph_from_drawing(d, [(i, (i + 1) % k) for i in range(k)])


def k4() -> tuple[PlaneGraph, Drawing, Drawing]:
    s = make_drawing({0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (3, 2)})
    t = make_drawing({0: (0, 0), 1: (6, 0), 2: (3, 6), 3: ("5/2", "5/2")})
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    return graph_from_drawing(s, edges), s, t


def k4me() -> tuple[PlaneGraph, Drawing, Drawing]:
    """4-cycle a,b,c,d (ids 0..3) with chord a-c."""
    s = make_drawing({0: (0, 0), 1: (4, -1), 2: (5, 3), 3: (1, 4)})
    t = make_drawing({0: (0, 0), 1: (3, -2), 2: (6, 2), 3: (-1, 3)})
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    return graph_from_drawing(s, edges), s, t


def subdiv() -> tuple[PlaneGraph, Drawing, Drawing]:
    """K4mE with the chord a-c subdivided by m (id 4)."""
    s = make_drawing({0: (0, 0), 1: (4, -1), 2: (5, 3), 3: (1, 4), 4: ("5/2", "3/2")})
    t = make_drawing({0: (0, 0), 1: (3, -2), 2: (6, 2), 3: (-1, 3), 4: (4, "4/3")})
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)]
    return graph_from_drawing(s, edges), s, t


def prism() -> tuple[PlaneGraph, Drawing, Drawing]:
    """Triangular prism: outer u1,u2,u3 = 0,1,2, inner v1,v2,v3 = 3,4,5."""
    s = make_drawing({
        0: (0, 0), 1: (12, 0), 2: (6, 10),
        3: (5, 3), 4: (7, 3), 5: (6, 5),
    })
    t = make_drawing({
        0: (0, 0), 1: (12, 0), 2: (6, 10),
        3: (4, 2), 4: (8, "5/2"), 5: ("11/2", 6),
    })
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return graph_from_drawing(s, edges), s, t


def wheel(k: int) -> PlaneGraph:
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    ring = convex_polygon(k, random.Random(k), jitter=False)
    draw = {i: ring[i] for i in range(k)}
    draw[k] = (sum(p[0] for p in ring) / k, sum(p[1] for p in ring) / k)
    return graph_from_drawing(make_drawing(draw), edges)


def stacked_triangulation(n: int, rng: random.Random) -> PlaneGraph:
    """Triangle with ``n - 3`` vertices inserted into random internal faces."""
    faces = [(0, 1, 2)]
    edges = [(0, 1), (1, 2), (2, 0)]
    for v in range(3, n):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        faces += [(a, b, v), (b, c, v), (c, a, v)]
        edges += [(a, v), (b, v), (c, v)]
    tri = {0: (0, 0), 1: (1, 0), 2: (0, 1)}
    g0 = _abstract_layout(n, edges, tri)
    return graph_from_drawing(g0, edges)


def _abstract_layout(n: int, edges, outer: Mapping[int, tuple]) -> Drawing:
    """Tutte layout computed from an edge list (planar by construction)."""
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    inner = [v for v in range(n) if v not in outer]
    idx = {v: i for i, v in enumerate(inner)}
    m = np.zeros((len(inner), len(inner)))
    bx = np.zeros(len(inner))
    by = np.zeros(len(inner))
    for v in inner:
        i = idx[v]
        for w in adj[v]:
            m[i, i] += 1
            if w in idx:
                m[i, idx[w]] -= 1
            else:
                bx[i] += outer[w][0]
                by[i] += outer[w][1]
    pos = {v: tuple(Fraction(c) for c in p) for v, p in outer.items()}
    if inner:
        xs, ys = np.linalg.solve(m, bx), np.linalg.solve(m, by)
        for v in inner:
            pos[v] = (Fraction(float(xs[idx[v]])), Fraction(float(ys[idx[v]])))
    return make_drawing(pos)


def grid(p: int, q: int) -> PlaneGraph:
    vid = lambda i, j: i * q + j  # noqa: E731
    draw = {vid(i, j): (j, i) for i in range(p) for j in range(q)}
    edges = [(vid(i, j), vid(i, j + 1)) for i in range(p) for j in range(q - 1)]
    edges += [(vid(i, j), vid(i + 1, j)) for i in range(p - 1) for j in range(q)]
    return graph_from_drawing(make_drawing(draw), edges)


def k_prism(k: int) -> PlaneGraph:
    outer = convex_polygon(k, random.Random(100 + k), jitter=False)
    draw = {i: (3 * x, 3 * y) for i, (x, y) in enumerate(outer)}
    draw.update({k + i: (x, y) for i, (x, y) in enumerate(outer)})
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return graph_from_drawing(make_drawing(draw), edges)


# -- non-strict variants -----------------------------------------------------

def subdivide_edges(
    graph: PlaneGraph, drawing: Drawing, edges: Sequence[tuple[int, int]], parts: int = 2
) -> tuple[PlaneGraph, Drawing]:
    """Subdivide each listed edge into ``parts`` segments with flat vertices."""
    draw = dict(drawing)
    all_edges = set(graph.edges)
    nxt = max(graph.vertices) + 1
    for u, v in edges:
        all_edges.discard(edge_key(u, v))
        prev = u
        for i in range(1, parts):
            t = mpq(i, parts)
            draw[nxt] = (
                drawing[u][0] + t * (drawing[v][0] - drawing[u][0]),
                drawing[u][1] + t * (drawing[v][1] - drawing[u][1]),
            )
            all_edges.add(edge_key(prev, nxt))
            prev = nxt
            nxt += 1
        all_edges.add(edge_key(prev, v))
    return graph_from_drawing(draw, sorted(all_edges)), draw


def redraw_subdivided(graph: PlaneGraph, base: PlaneGraph, base_drawing: Drawing, rng: random.Random) -> Drawing:
    """Second drawing of a subdivided graph: subdivision vertices at random ratios."""
    draw = dict(base_drawing)
    base_v = set(base.vertices)
    chains = _chains_between(graph, base_v)
    for x, y, inner in chains:
        k = len(inner)
        cuts = sorted(rng.sample(range(1, 40), k))
        for i, w in enumerate(inner):
            t = mpq(cuts[i], 40)
            draw[w] = (
                base_drawing[x][0] + t * (base_drawing[y][0] - base_drawing[x][0]),
                base_drawing[x][1] + t * (base_drawing[y][1] - base_drawing[x][1]),
            )
    return draw


def _chains_between(graph: PlaneGraph, base_v: set[int]) -> list[tuple[int, int, list[int]]]:
    out = []
    seen: set[int] = set()
    for x in sorted(base_v):
        for w in graph.neighbors(x):
            if w in base_v or w in seen:
                continue
            inner = []
            prev, cur = x, w
            while cur not in base_v:
                inner.append(cur)
                seen.add(cur)
                a, b = graph.neighbors(cur)
                prev, cur = cur, (b if a == prev else a)
            out.append((x, cur, inner))
    return out


def flatten_vertex(graph: PlaneGraph, drawing: Drawing, v: int, a: int, b: int) -> Drawing:
    """Move ``v`` along the x axis onto the line through neighbours ``a, b``."""
    pa, pb = drawing[a], drawing[b]
    y = drawing[v][1]
    if pa[1] == pb[1]:
        raise ValueError("horizontal segment")
    t = (y - pa[1]) / (pb[1] - pa[1])
    out = dict(drawing)
    out[v] = (pa[0] + t * (pb[0] - pa[0]), y)
    return out


# -- the corpus --------------------------------------------------------------

DEFAULT_SIZES = (8, 12, 16, 20, 25, 30, 40, 50, 60)


def _named(name: str, triple) -> Fixture:
    g, s, t = triple
    return Fixture(name, g, s, t, "strict" if check_drawing(g, s).is_strict else "convex")


def strict_fixtures(seed: int = 0, sizes: Sequence[int] = DEFAULT_SIZES) -> list[Fixture]:
    """Strictly convex pairs: cycles, small named graphs, wheels, grids, prisms
    and stacked triangulations of the given sizes."""
    rng = random.Random(seed)
    out = [strict_pair(f"C{k}", cycle_graph(k), rng) for k in range(3, 13)]
    out += [_named("K4", k4()), _named("K4mE", k4me()), _named("PRISM", prism())]
    out += [strict_pair(f"W{k}", wheel(k), rng) for k in range(4, 9)]
    out += [strict_pair(f"GRID{p}x{q}", grid(p, q), rng) for p, q in ((3, 3), (3, 4))]
    out += [strict_pair(f"PRISM{k}", k_prism(k), rng) for k in (4, 5)]
    out += [strict_pair(f"ST{n}", stacked_triangulation(n, rng), rng) for n in sizes]
    return out


def _hexagon_flat() -> tuple[PlaneGraph, Drawing, Drawing]:
    """Hexagon with two flat boundary vertices against a strictly convex one."""
    s = make_drawing({0: (0, 0), 1: (2, 0), 2: (4, 0), 3: (4, 3), 4: (2, 3), 5: (0, 3)})
    t = make_drawing({0: (0, 0), 1: (2, -1), 2: (4, 0), 3: (5, 2), 4: (2, 4), 5: (-1, 2)})
    return graph_from_drawing(t, [(i, (i + 1) % 6) for i in range(6)]), s, t


def convex_fixtures(seed: int = 0) -> list[Fixture]:
    """Convex but not strictly convex pairs with flat paths.

    Besides SUBDIV and a hexagon with a flat side, base graphs get two
    internal edges and one boundary edge subdivided; the source keeps the
    subdivision vertices evenly spaced, the target places them at random
    ratios on a second drawing.
    """
    rng = random.Random(seed + 1)
    out = [_named("SUBDIV", subdiv()), _named("HEXFLAT", _hexagon_flat())]
    bases = [
        ("W5", wheel(5)), ("W6", wheel(6)), ("W7", wheel(7)), ("PRISM4", k_prism(4)),
        ("PRISM5", k_prism(5)), ("GRID3x3", grid(3, 3)), ("GRID3x4", grid(3, 4)),
        ("ST10", stacked_triangulation(10, rng)), ("ST14", stacked_triangulation(14, rng)),
        ("ST18", stacked_triangulation(18, rng)),
    ]
    for name, base in bases:
        fx = strict_pair(name, base, rng)
        internal = sorted(e for e in base.edges if base.is_internal_edge(*e))
        boundary = sorted(e for e in base.edges if not base.is_internal_edge(*e))
        picked = rng.sample(internal, 2) + rng.sample(boundary, 1)
        g, src = subdivide_edges(base, fx.source, picked, 3)
        tgt = redraw_subdivided(g, base, fx.target, rng)
        out.append(Fixture(f"{name}-SUB", g, src, tgt, "convex"))
    for fx in out:
        for d in (fx.source, fx.target):
            if not check_drawing(fx.graph, d).is_convex:
                raise RuntimeError(f"fixture {fx.name} is not convex")
    return out


def gen_corpus(seed: int = 0, sizes: Sequence[int] = DEFAULT_SIZES) -> list[Fixture]:
    """Deterministic strict and convex fixtures, every drawing validated."""
    return strict_fixtures(seed, sizes) + convex_fixtures(seed)


# -- level drawings with injected flat angles --------------------------------

def inject_flat_angles(graph: PlaneGraph, drawing: Drawing, limit: int | None = None) -> list:
    """Convex level drawings made by sliding one internal vertex onto a chord.

    A hierarchy is taken along a generic direction of ``drawing``.  For each
    internal corner ``a, v, b`` whose middle vertex lies strictly between
    the levels of its neighbours, ``v`` slides along its level onto segment
    ``ab``; results that stay convex are returned as ``(hierarchy, drawing)``.
    """
    from .geometry import generic_direction
    from .level_drawing import frame, hierarchy_from_drawing, unframe

    d = generic_direction(drawing)
    h = hierarchy_from_drawing(graph, drawing, d)
    co = frame(drawing, d)
    out = []
    seen: set[tuple] = set()
    for f in graph.internal_faces:
        walk = f.boundary
        k = len(walk)
        for i in range(k):
            a, v, b = walk[i - 1], walk[i], walk[(i + 1) % k]
            if not graph.is_internal(v) or (v, a, b) in seen:
                continue
            (xa, ya), (xb, yb), yv = co[a], co[b], co[v][1]
            if not min(ya, yb) < yv < max(ya, yb):
                continue
            seen.add((v, a, b))
            moved = dict(co)
            moved[v] = (xa + (yv - ya) / (yb - ya) * (xb - xa), yv)
            cand = unframe(moved, d)
            if check_drawing(graph, cand).verdict == "ConvexOnly":
                out.append((h, cand))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def flat_fixtures(seed: int = 0, per_graph: int = 4) -> list:
    """``(name, graph, hierarchy, drawing)`` convex level drawings with flat angles.

    Triangulated faces cannot hold an internal flat angle, so the base
    graphs are grids and prisms.
    """
    rng = random.Random(seed + 2)
    named = [("PRISM", prism()[0], prism()[1])]
    for name, g in [
        ("GRID3x3", grid(3, 3)), ("GRID3x4", grid(3, 4)), ("GRID4x4", grid(4, 4)),
        ("PRISM4", k_prism(4)), ("PRISM5", k_prism(5)), ("PRISM6", k_prism(6)),
    ]:
        named.append((name, g, strict_pair(name, g, rng).source))
    out = []
    for name, g, d in named:
        for i, (h, cand) in enumerate(inject_flat_angles(g, d, per_graph)):
            out.append((f"{name}-flat{i}", g, h, cand))
    return out
