"""Construction of unidirectional convex morphs.

The strictly convex morph is built recursively along the decomposition of
the graph.  A cycle is handled directly by moving its polygon onto a common
lens and then one vertex at a time onto shared slots.  Otherwise the next
removal decides the case:

* a degree-3 vertex ``u`` with three outer neighbours is moved to the
  barycentric position it has in the target, removed, and re-inserted at the
  same coefficients in every frame of the recursive morph;
* an internal edge ``(u, v)`` is removed after both drawings have been
  redrawn as level drawings of one direction each (a single unidirectional
  step on either side).  Endpoints that drop to degree 2 are smoothed away
  and re-inserted at fixed convex-combination coefficients.

Morphs between convex drawings first make the drawings strictly convex
except along internal degree-2 chains, align the chain coefficients and
then reuse the strict morph on the graph with the chains smoothed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from gmpy2 import mpq

from .certify import Report, StepCertificate, certify_morph, certify_step, displacement_direction
from .connectivity import NOT_CONVEX, STRICT, classify_convexity
from .decomposition import (
    PathRemoval,
    TripodRemoval,
    apply_removal,
    next_removal,
    validation_profile,
)
from .errors import (
    CertificateFailed,
    DegenerateEdge,
    GraphMismatch,
    InfeasiblePolygon,
    NotConvexGraph,
    NotEquivalent,
    NotLevelRespecting,
    NotStrictlyConvex,
    OrderMismatch,
    ValidationExhausted,
)
from .geometry import (
    Direction,
    Drawing,
    check_drawing,
    cross,
    drawings_equal,
    face_walk,
    from_frame,
    generic_direction,
    is_monotone,
    perpendicular,
    projection,
    sub,
    to_frame,
)
from .graph_core import PlaneGraph, chains, smooth
from .level_drawing import (
    Hierarchy,
    frame,
    hierarchy_from_drawing,
    is_hierarchical_st,
    lp_level_drawing,
    on_levels,
    strictify,
    unframe,
)

log = logging.getLogger(__name__)

ONE = mpq(1)
HALF = mpq(1, 2)
CONVEX_STEP_CONSTANT = 8
MAX_HALVINGS = 200
EPS_HALVINGS = 64


# -- value types -------------------------------------------------------------

@dataclass(frozen=True)
class InsertionCoefficients:
    """A vertex placed as a fixed convex combination of anchor vertices.

    Attributes:
        vertex: The placed vertex.
        anchors: Anchor vertices (repetitions allowed).
        weights: Positive rationals summing to one.
    """

    vertex: int
    anchors: tuple[int, ...]
    weights: tuple

    def __post_init__(self) -> None:
        if len(self.anchors) != len(self.weights):
            raise ValueError("one weight per anchor is required")
        if any(w <= 0 for w in self.weights) or sum(self.weights) != 1:
            raise ValueError("weights must be positive and sum to one")

    def position(self, drawing: Mapping):
        x = sum((w * drawing[a][0] for a, w in zip(self.anchors, self.weights)), mpq(0))
        y = sum((w * drawing[a][1] for a, w in zip(self.anchors, self.weights)), mpq(0))
        return (x, y)

    def holds_in(self, drawing: Mapping) -> bool:
        return tuple(drawing[self.vertex]) == self.position(drawing)


@dataclass
class MorphStep:
    """One certified linear step between two level drawings."""

    start: Drawing
    end: Drawing
    direction: Direction | None
    certificate: StepCertificate


@dataclass
class Morph:
    """A sequence of drawings of one plane graph.

    Consecutive frames are joined by linear morphs.

    Attributes:
        graph: The plane graph.
        frames: Drawings ``Gamma_0 .. Gamma_k``.
        step_directions: Common displacement direction of each step, or
            ``None`` for a step where nothing moves.
    """

    graph: PlaneGraph
    frames: list
    step_directions: list = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.step_directions:
            self.step_directions = [
                displacement_direction(a, b)[1] for a, b in zip(self.frames, self.frames[1:])
            ]

    @property
    def steps(self) -> int:
        return len(self.frames) - 1

    def certify(self, mode: str = "strict", bound: int | None = None, source=None, target=None) -> Report:
        return certify_morph(self.graph, self.frames, mode, bound, source, target)

    def to_dict(self, certificates: Sequence[StepCertificate] | None = None) -> dict:
        """JSON form ``{"graph", "frames", "directions", "certificates"}``."""
        from .io import morph_to_json

        return morph_to_json(self, certificates)


def _finish(graph: PlaneGraph, frames: list) -> Morph:
    """Drop repeated consecutive frames, keeping at least one step."""
    out = [frames[0]]
    for f in frames[1:]:
        if not drawings_equal(f, out[-1]):
            out.append(f)
    if len(out) == 1:
        out.append(dict(frames[-1]))
    return Morph(graph, out)


def choose_epsilon_xi(
    valid: Callable[[mpq], bool],
    start=HALF,
    max_halvings: int = MAX_HALVINGS,
    trace: list | None = None,
) -> mpq:
    """Largest value ``start / 2**k`` accepted by ``valid``.

    Raises:
        ValidationExhausted: No value passed within ``max_halvings`` halvings.
    """
    value = mpq(start)
    for _ in range(max_halvings + 1):
        ok = valid(value)
        if trace is not None:
            trace.append((value, ok))
        if ok:
            return value
        value /= 2
    raise ValidationExhausted("no admissible parameter found by halving")


# -- left-to-right equivalence and single steps ------------------------------

def _level_orders(graph: PlaneGraph, drawing: Mapping, h: Hierarchy) -> list[list]:
    d = h.direction
    coords = frame(drawing, d)
    items: list[list] = [[] for _ in h.levels]
    for v in graph.vertices:
        items[h.assignment[v]].append((coords[v][0], ("v", v)))
    for a, b in graph.edges:
        ia, ib = h.assignment[a], h.assignment[b]
        if ia > ib:
            a, b, ia, ib = b, a, ib, ia
        (xa, ya), (xb, yb) = coords[a], coords[b]
        for i in range(ia + 1, ib):
            y = h.levels[i]
            items[i].append((xa + (xb - xa) * (y - ya) / (yb - ya), ("e", (a, b))))
    return items


def left_to_right_equivalent(graph: PlaneGraph, g1: Mapping, g2: Mapping, h: Hierarchy) -> bool:
    """Same strict left-to-right order of vertices and edges on every level.

    Raises:
        NotLevelRespecting: A vertex is off its level in one of the drawings.
    """
    if not on_levels(g1, h) or not on_levels(g2, h):
        raise NotLevelRespecting("a vertex is not on its level")
    for row1, row2 in zip(_level_orders(graph, g1, h), _level_orders(graph, g2, h)):
        row1.sort(key=lambda t: t[0])
        pos2 = {key: x for x, key in row2}
        xs1 = [x for x, _ in row1]
        xs2 = [pos2[key] for _, key in row1]
        for i in range(len(row1) - 1):
            if not (xs1[i] < xs1[i + 1] and xs2[i] < xs2[i + 1]):
                return False
    return True


def unidirectional_step(
    graph: PlaneGraph, h: Hierarchy, g1: Mapping, g2: Mapping, mode: str = "strict"
) -> MorphStep:
    """Certified linear morph between two equivalent convex level drawings.

    Args:
        graph: The plane graph.
        h: Hierarchy both drawings respect.
        g1: Start drawing.
        g2: End drawing.
        mode: ``"strict"`` or ``"convex"``: the class both drawings and
            every intermediate drawing must have.

    Raises:
        NotEquivalent: The drawings are not left-to-right equivalent, not
            of the required class, or the hierarchy has a face that is not st.
        CertificateFailed: The exact certificate rejects the step.
    """
    if not is_hierarchical_st(graph, h):
        raise NotEquivalent("hierarchy has a face that is not an st-face")
    for g in (g1, g2):
        if not check_drawing(graph, g).passes(mode):
            raise NotEquivalent(f"drawing fails the {mode} convexity check")
    if not left_to_right_equivalent(graph, g1, g2, h):
        raise NotEquivalent("drawings order some level differently")
    cert = certify_step(graph, g1, g2, mode)
    if not cert.passed or not cert.unidirectional:
        raise CertificateFailed("level step failed certification")
    return MorphStep(dict(g1), dict(g2), cert.direction, cert)


# -- cycles ------------------------------------------------------------------

def _cw_order(graph: PlaneGraph) -> list[int]:
    """Vertices of a cycle in clockwise drawing order from its smallest id."""
    inner = next(i for i, f in enumerate(graph.faces) if not f.is_outer)
    walk = list(reversed(face_walk(graph, inner)))
    k = walk.index(min(walk))
    return walk[k:] + walk[:k]


def _lens_frames(order: Sequence[int], drawing: Mapping, lens, slots) -> list[dict]:
    """Frames from one drawing onto the lens and then onto the slots."""
    x0, y0, r, hgt, ell = lens
    up = perpendicular(ell)
    coords = {v: (projection(drawing[v], ell), projection(drawing[v], up)) for v in order}

    def back(X, Y):
        n2 = ell[0] * ell[0] + ell[1] * ell[1]
        return ((X * ell[0] + Y * up[0]) / n2, (X * ell[1] + Y * up[1]) / n2)

    def arc(X, top):
        s = (X - x0) / r
        return y0 + (hgt if top else -hgt) * (1 - s * s)

    n = len(order)
    left = min(range(n), key=lambda i: coords[order[i]][0])
    right = max(range(n), key=lambda i: coords[order[i]][0])
    upper = set()
    i = left
    while True:
        upper.add(order[i])
        if i == right:
            break
        i = (i + 1) % n
    cur = {v: back(coords[v][0], arc(coords[v][0], v in upper)) for v in order}
    frames = [dict(drawing), dict(cur)]
    seq = list(range(left - 1, -1, -1)) + list(range(left, n))
    for i in seq:
        cur = dict(cur)
        cur[order[i]] = back(*slots[i])
        frames.append(cur)
    return frames


def morph_cycle(graph: PlaneGraph, source: Mapping, target: Mapping) -> Morph:
    """Strictly convex unidirectional morph between two drawings of a cycle.

    Both polygons are first pushed along a common direction onto a shared
    strictly convex lens built from two parabolic arcs; then the vertices
    move one at a time to slots on the lens left of every vertex.  Mirroring
    the construction for the target gives at most ``2n + 2`` steps.

    Raises:
        OrderMismatch: ``graph`` is not a cycle or a drawing is not a
            strictly convex polygon in the embedding order.
    """
    if not graph.is_cycle():
        raise OrderMismatch("graph is not a cycle")
    _cover(graph, source, target)
    for g in (source, target):
        if not check_drawing(graph, g).is_strict:
            raise OrderMismatch("drawing is not a strictly convex polygon in embedding order")
    if drawings_equal(source, target):
        return _finish(graph, [dict(source), dict(target)])
    order = _cw_order(graph)
    ell = generic_direction([source, target])
    up = perpendicular(ell)
    pts = [p for g in (source, target) for p in (g[v] for v in order)]
    xs = [projection(p, ell) for p in pts]
    ys = [projection(p, up) for p in pts]
    x0 = (min(xs) + max(xs)) / 2
    y0 = (min(ys) + max(ys)) / 2
    r = 2 * max(abs(x - x0) for x in xs) + 1
    hgt = 2 * max(abs(y - y0) for y in ys) + 1
    n = len(order)
    span = min(xs) - (x0 - r)
    slots = []
    for i in range(n):
        X = x0 - r + span * (i + 1) / (n + 1)
        s = (X - x0) / r
        slots.append((X, y0 + hgt * (1 - s * s)))
    lens = (x0, y0, r, hgt, ell)
    fs = _lens_frames(order, source, lens, slots)
    ft = _lens_frames(order, target, lens, slots)
    return _finish(graph, fs + ft[::-1][1:])


def _cover(graph: PlaneGraph, *drawings: Mapping) -> None:
    vs = set(graph.vertices)
    for g in drawings:
        if not vs <= set(g):
            raise GraphMismatch("drawing does not cover every vertex")


# -- strictly convex graphs --------------------------------------------------

def _barycentric(p, a, b, c) -> tuple:
    """Exact weights of ``p`` with respect to the triangle ``a b c``."""
    u, v, w = sub(a, c), sub(b, c), sub(p, c)
    det = cross(u, v)
    la = cross(w, v) / det
    lb = cross(u, w) / det
    return (la, lb, ONE - la - lb)


def _lift(frames: Sequence[Mapping], coeffs: Sequence[InsertionCoefficients]) -> list[dict]:
    out = []
    for f in frames:
        g = dict(f)
        for c in coeffs:
            g[c.vertex] = c.position(g)
        out.append(g)
    return out


def _tripod_case(graph: PlaneGraph, s: Mapping, t: Mapping, removal: TripodRemoval) -> list:
    u = removal.center
    anchors = tuple(p[-1] for p in removal.paths)
    if any(len(p) != 2 for p in removal.paths):
        raise ValidationExhausted("tripod legs of a strictly convex graph are single edges")
    lam = _barycentric(t[u], *(t[a] for a in anchors))
    coeff = InsertionCoefficients(u, anchors, lam)
    rest = apply_removal(graph, removal)
    keep = set(rest.vertices)
    sub_frames = _strict_frames(
        rest, {v: s[v] for v in keep}, {v: t[v] for v in keep}
    )
    return [dict(s)] + _lift(sub_frames, [coeff])


def _direction_candidates(n: Direction, e: Direction):
    """Directions close to ``n``, tilted towards ``e`` by shrinking amounts.

    Candidates are scaled so that their larger component is ``+-1`` and
    the other one is dyadic; frames along them then keep dyadic
    coordinates dyadic.  Coarse roundings come before the exact value.
    """
    for k in range(1, 80):
        for sgn in (1, -1):
            delta = sgn * mpq(1, 2 ** k)
            d = (n[0] + delta * e[0], n[1] + delta * e[1])
            i = 0 if abs(d[0]) >= abs(d[1]) else 1
            if d[i] == 0:
                continue
            big = mpq(1 if d[i] > 0 else -1)
            ratio = d[1 - i] / abs(d[i])
            for bits in (6, 12, 24, 48):
                small = mpq(round(ratio * (1 << bits)), 1 << bits)
                yield (big, small) if i == 0 else (small, big)
            yield (big, ratio) if i == 0 else (ratio, big)


def _face_with(graph: PlaneGraph, vertices: set) -> int:
    for i, f in enumerate(graph.faces):
        if not f.is_outer and vertices <= f.vertices:
            return i
    raise ValidationExhausted(f"no internal face contains {sorted(vertices)}")


DIRECTION_POOL = 12


def _level_gap(proj: Mapping) -> mpq:
    ys = sorted(proj.values())
    return min(b - a for a, b in zip(ys, ys[1:])) / (ys[-1] - ys[0])


def _case_directions(graph: PlaneGraph, reduced: PlaneGraph, s: Mapping, u: int, v: int, splits) -> list:
    """Directions for the level redraw around the removed edge ``(u, v)``.

    The face of ``reduced`` that contained the edge must be monotone, all
    vertices must lie on distinct levels, and every smoothed endpoint must
    lie strictly between the levels of its two remaining neighbours.  Up to
    ``DIRECTION_POOL`` admissible directions are returned.  Narrow level
    gaps make the level LP ill-conditioned and long denominators inflate
    coordinates, so directions within a factor four of the widest smallest
    gap come first, shortest denominators leading.
    """
    merged = graph.face_of_dart(u, v).vertices | graph.face_of_dart(v, u).vertices
    walk = face_walk(reduced, _face_with(reduced, set(merged)))
    poly = [s[w] for w in walk]
    e = sub(s[v], s[u])
    found = []
    for d in _direction_candidates(perpendicular(e), e):
        if len(found) == DIRECTION_POOL:
            break
        if d == (0, 0) or any(d == f for _, f in found):
            continue
        proj = {w: projection(s[w], d) for w in graph.vertices}
        if len(set(proj.values())) != len(proj):
            continue
        if not is_monotone(poly, d, closed=True):
            continue
        if any(not (proj[x] < proj[w] < proj[y] or proj[y] < proj[w] < proj[x]) for w, x, y in splits):
            continue
        found.append((_level_gap(proj), d))
    if not found:
        raise ValidationExhausted("no admissible direction for the level redraw")
    best = max(g for g, _ in found)
    size = lambda d: max(int(c.denominator).bit_length() for c in d)  # noqa: E731
    found.sort(key=lambda item: (item[0] * 4 < best, size(item[1]), -item[0]))
    return [d for _, d in found]


def _strict_level_drawing(core: PlaneGraph, h: Hierarchy, outer: Mapping) -> Drawing:
    try:
        return lp_level_drawing(core, h, outer, mode="strict")
    except InfeasiblePolygon:
        log.debug("strict level LP failed; strictifying a convex drawing")
        return strictify(core, h, lp_level_drawing(core, h, outer, mode="convex"))


def _strict_on(graph: PlaneGraph, drawing: Mapping, faces) -> bool:
    try:
        return check_drawing(graph, drawing, faces).is_strict
    except DegenerateEdge:
        return False


@dataclass
class _Side:
    """Level redraw of one endpoint drawing around a removed edge."""

    drawing: Mapping
    direction: Direction
    hierarchy: Hierarchy
    reduced_hierarchy: Hierarchy
    core_drawing: Drawing


def _level_redraw(graph, reduced, core, s, u, v, splits) -> _Side:
    outer = {w: s[w] for w in core.outer_vertices}
    failure = None
    for d in _case_directions(graph, reduced, s, u, v, splits):
        h_reduced = hierarchy_from_drawing(reduced, s, d)
        try:
            lam = _strict_level_drawing(core, h_reduced.restrict(core.vertices), outer)
        except (InfeasiblePolygon, ValidationExhausted) as exc:
            log.debug("level redraw along %s failed: %s", d, exc)
            failure = exc
            continue
        return _Side(s, d, hierarchy_from_drawing(graph, s, d), h_reduced, lam)
    raise failure


def _insert_split(
    graph, core, side: _Side, splits, face_vertices, moved_first=None, halvings=MAX_HALVINGS
) -> Drawing:
    """Put each smoothed vertex on its level just inside the face it bounds.

    The offset ``eps`` is halved until the drawing is strictly convex and,
    when ``moved_first`` is given, also after that vertex has been moved
    to its final insertion point.
    """
    d, lam = side.direction, side.core_drawing
    coords = frame(lam, d)
    walk = face_walk(core, _face_with(core, face_vertices))
    k = len(walk)
    base = {}
    for w, x, y in splits:
        (xx, yx), (xy, yy) = coords[x], coords[y]
        yw = side.reduced_hierarchy.y(w)
        xw = xx + (xy - xx) * (yw - yx) / (yy - yx)
        i = walk.index(x)
        a, b = (x, y) if walk[(i + 1) % k] == y else (y, x)
        # the face lies to the left of a -> b
        base[w] = (xw, yw, -1 if coords[b][1] > coords[a][1] else 1)
    xs = [c[0] for c in coords.values()]
    affected = _faces_at(graph, [w for w, _, _ in splits])

    def build(eps):
        out = dict(lam)
        for w, (xw, yw, sgn) in base.items():
            out[w] = from_frame((xw + sgn * eps, yw), d)
        return out

    def valid(eps):
        g = build(eps)
        if not _strict_on(graph, g, affected):
            return False
        if moved_first is None:
            return True
        g[moved_first.vertex] = moved_first.position(g)
        return _strict_on(graph, g, affected)

    return build(choose_epsilon_xi(valid, max(xs) - min(xs), halvings))


def _faces_at(graph: PlaneGraph, vertices) -> list[int]:
    return sorted({graph.face_index_of_dart(w, z) for w in vertices for z in graph.neighbors(w)})


def _level_step(graph: PlaneGraph, side: _Side, gam: Mapping) -> None:
    try:
        unidirectional_step(graph, side.hierarchy, side.drawing, gam)
    except NotEquivalent as exc:
        raise CertificateFailed(f"redrawn level drawing is not equivalent: {exc}") from exc


def _edge_case(graph: PlaneGraph, s: Mapping, t: Mapping, removal: PathRemoval) -> list:
    if len(removal.path) != 2:
        raise ValidationExhausted("path removals of a strictly convex graph are single edges")
    u, v = removal.path
    reduced = apply_removal(graph, removal)
    splits = []
    for w in (u, v):
        if reduced.degree(w) == 2 and reduced.is_internal(w):
            x, y = sorted(reduced.neighbors(w))
            splits.append((w, x, y))
    core = smooth(reduced, [w for w, _, _ in splits])[0] if splits else reduced
    side_s = _level_redraw(graph, reduced, core, s, u, v, splits)
    side_t = _level_redraw(graph, reduced, core, t, u, v, splits)
    inner = _strict_frames(core, side_s.core_drawing, side_t.core_drawing)
    if not splits:
        for side in (side_s, side_t):
            _level_step(graph, side, side.core_drawing)
        return [dict(s)] + inner + [dict(t)]

    coeffs_of = _split_coefficients(splits, (u, v))
    affected = _faces_at(graph, [w for w, _, _ in splits])
    need = {w for w in (u, v) if w in core.vertices} | {z for _, x, y in splits for z in (x, y)}

    def lifted_ok(xi):
        return all(_strict_on(graph, f, affected) for f in _lift(inner, coeffs_of(xi)))

    # The insertion offsets must also suit the frame where only the first
    # smoothed vertex has reached its coefficients, so xi shrinks when no
    # offset works for it.
    xi = HALF
    for _ in range(MAX_HALVINGS):
        xi = choose_epsilon_xi(lifted_ok, xi)
        cs = coeffs_of(xi)
        first = cs[0] if len(cs) == 2 else None
        try:
            gam_s = _insert_split(graph, core, side_s, splits, need, first, EPS_HALVINGS)
            gam_t = _insert_split(graph, core, side_t, splits, need, first, EPS_HALVINGS)
            break
        except ValidationExhausted:
            xi /= 2
    else:
        raise ValidationExhausted("no compatible insertion offsets and coefficients")
    lifted = _lift(inner, cs)
    _level_step(graph, side_s, gam_s)
    _level_step(graph, side_t, gam_t)
    head, tail = [dict(s), gam_s], [gam_t, dict(t)]
    if first is not None:
        # the first smoothed vertex moves alone, then the second
        mid_s, mid_t = dict(gam_s), dict(gam_t)
        mid_s[first.vertex] = first.position(mid_s)
        mid_t[first.vertex] = first.position(mid_t)
        head.append(mid_s)
        tail.insert(0, mid_t)
    return head + lifted + tail


def _split_coefficients(splits, ends) -> Callable[[mpq], list]:
    """Insertion coefficients of the smoothed endpoints as functions of ``xi``."""
    if len(splits) == 1:
        (w, x, y), = splits
        other = ends[1] if ends[0] == w else ends[0]

        def make(xi):
            return [InsertionCoefficients(w, (x, y, other), ((1 - xi) / 2, (1 - xi) / 2, xi))]

        return make
    (u, xu, yu), (v, xv, yv) = splits

    def make2(xi):
        a, b = (1 - xi) / 2, xi / 2
        return [
            InsertionCoefficients(u, (xu, yu, xv, yv), (a, a, b, b)),
            InsertionCoefficients(v, (xu, yu, xv, yv), (b, b, a, a)),
        ]

    return make2


def _strict_frames(graph: PlaneGraph, s: Mapping, t: Mapping) -> list:
    if drawings_equal(s, t):
        return [dict(s), dict(t)]
    if graph.is_cycle():
        return morph_cycle(graph, s, t).frames
    removal = next_removal(graph)
    if isinstance(removal, TripodRemoval):
        frames = _tripod_case(graph, s, t, removal)
    else:
        frames = _edge_case(graph, s, t, removal)
    if validation_profile() == "debug":
        report = certify_morph(graph, frames, "strict")
        if not report.passed:
            raise CertificateFailed(
                f"{removal} on {graph.n} vertices: failing steps {report.failing_steps}"
            )
    return frames


def strict_step_bound(graph: PlaneGraph) -> int:
    """``2n + 2m`` with ``m`` the number of internal faces."""
    return 2 * graph.n + 2 * graph.num_internal_faces


def morph_strictly_convex(graph: PlaneGraph, source: Mapping, target: Mapping) -> Morph:
    """Strictly convex unidirectional morph with at most ``2n + 2m`` steps.

    Args:
        graph: A strictly convex plane graph.
        source: Strictly convex drawing of ``graph``.
        target: Strictly convex drawing of ``graph``.

    Raises:
        GraphMismatch: A drawing misses a vertex of ``graph``.
        NotStrictlyConvex: The graph or one of the drawings is not strictly convex.
    """
    _cover(graph, source, target)
    if classify_convexity(graph).tag != STRICT:
        raise NotStrictlyConvex("graph is not strictly convex")
    for g in (source, target):
        if not check_drawing(graph, g).is_strict:
            raise NotStrictlyConvex("drawing is not strictly convex")
    vs = graph.vertices
    frames = _strict_frames(graph, {v: source[v] for v in vs}, {v: target[v] for v in vs})
    return _finish(graph, frames)


# -- convex drawings ---------------------------------------------------------

def convex_step_bound(graph: PlaneGraph) -> int:
    """``c n`` with the implementation constant ``c``."""
    return CONVEX_STEP_CONSTANT * graph.n


def _place_on_segments(core_drawing: Mapping, mp, h: Hierarchy) -> Drawing:
    """Put every chain vertex on its level, on the segment of its chain."""
    d = h.direction
    out = dict(core_drawing)
    for path in mp.edge_to_path.values():
        (X0, Y0), (X1, Y1) = to_frame(out[path[0]], d), to_frame(out[path[-1]], d)
        for w in path[1:-1]:
            y = h.y(w)
            out[w] = from_frame((X0 + (y - Y0) / (Y1 - Y0) * (X1 - X0), y), d)
    return out


def _core_strict_side(graph: PlaneGraph, core: PlaneGraph, mp, drawing: Mapping) -> Drawing:
    """One convex level step from ``drawing`` to a drawing with a strict core.

    Chain vertices end on the straight segments of their chains.  The step
    is a level redraw along a direction generic for ``drawing``.
    """
    d = generic_direction(drawing)
    h = hierarchy_from_drawing(graph, drawing, d)
    lam = _strict_level_drawing(core, h.restrict(core.vertices), None)
    full = _place_on_segments(lam, mp, h) if mp is not None else lam
    try:
        unidirectional_step(graph, h, drawing, full, mode="convex")
    except NotEquivalent as exc:
        raise CertificateFailed(f"level redraw of a convex drawing: {exc}") from exc
    return full


def _chain_ratios(mp, drawing: Mapping) -> dict[int, mpq]:
    """Position of each chain vertex along its chain segment, in ``(0, 1)``."""
    out = {}
    for path in mp.edge_to_path.values():
        a, b = drawing[path[0]], drawing[path[-1]]
        e = sub(b, a)
        n2 = e[0] * e[0] + e[1] * e[1]
        for w in path[1:-1]:
            q = sub(drawing[w], a)
            out[w] = (q[0] * e[0] + q[1] * e[1]) / n2
    return out


def _on_chain(drawing: Mapping, path, ratios) -> dict:
    a, b = drawing[path[0]], drawing[path[-1]]
    return {
        w: (a[0] + ratios[w] * (b[0] - a[0]), a[1] + ratios[w] * (b[1] - a[1]))
        for w in path[1:-1]
    }


def morph_convex(graph: PlaneGraph, source: Mapping, target: Mapping) -> Morph:
    """Convex unidirectional morph with at most ``c n`` steps (``c = 8``).

    Each drawing is first redrawn, in one level step, so that the graph with
    its internal degree-2 chains smoothed is strictly convex.  One step per
    chain then moves the chain vertices of the source to the ratios they
    have in the target.  The strict morph of the smoothed graph follows,
    with chain vertices kept at those ratios in every frame.

    Args:
        graph: A plane graph admitting a convex drawing.
        source: Convex drawing of ``graph``.
        target: Convex drawing of ``graph``.

    Raises:
        GraphMismatch: A drawing misses a vertex of ``graph``.
        NotConvexGraph: The graph or one of the drawings is not convex.
    """
    _cover(graph, source, target)
    cls = classify_convexity(graph)
    if cls.tag == NOT_CONVEX:
        raise NotConvexGraph(f"graph admits no convex drawing: {cls.witness.get('reason')}")
    vs = graph.vertices
    s = {v: source[v] for v in vs}
    t = {v: target[v] for v in vs}
    reps = [check_drawing(graph, g) for g in (s, t)]
    if not all(r.is_convex for r in reps):
        raise NotConvexGraph("drawing is not convex")
    if cls.tag == STRICT and all(r.is_strict for r in reps):
        return morph_strictly_convex(graph, s, t)
    internal2 = [v for v in vs if graph.degree(v) == 2 and graph.is_internal(v)]
    core, mp = smooth(graph, "internal") if internal2 else (graph, None)

    def strict_core(g):
        return check_drawing(core, {v: g[v] for v in core.vertices}).is_strict

    s1 = s if strict_core(s) else _core_strict_side(graph, core, mp, s)
    t1 = t if strict_core(t) else _core_strict_side(graph, core, mp, t)
    frames = [s, s1]
    ratios: dict[int, mpq] = {}
    if mp is not None:
        ratios = _chain_ratios(mp, t1)
        current = dict(s1)
        for path in mp.edge_to_path.values():
            moved = _on_chain(current, path, ratios)
            if any(current[w] != p for w, p in moved.items()):
                current = {**current, **moved}
                frames.append(current)
    inner = _strict_frames(
        core, {v: frames[-1][v] for v in core.vertices}, {v: t1[v] for v in core.vertices}
    )
    for f in inner:
        full = dict(f)
        if mp is not None:
            for path in mp.edge_to_path.values():
                full.update(_on_chain(f, path, ratios))
        frames.append(full)
    frames += [t1, t]
    return _finish(graph, frames)
