"""Exact rational geometry: orientation, drawing validation, monotonicity.

All predicates work on :class:`gmpy2.mpq` coordinates and never round.
Convention: y axis up, positive orientation means a counterclockwise (left)
turn.  Internal faces are traversed counterclockwise and the outer face
clockwise, as produced by :mod:`convexmorph.graph_core`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from gmpy2 import mpq

from .errors import (
    DegenerateEdge,
    MissingCoordinates,
    NotStrictlyConvex,
    SameSide,
    ValidationExhausted,
)
from .graph_core import PlaneGraph

Point = tuple  # (mpq, mpq)
Direction = tuple  # (mpq, mpq), not both zero
Drawing = dict  # vertex id -> Point

ZERO = mpq(0)
ONE = mpq(1)

STRICT = "StrictlyConvex"
CONVEX = "ConvexOnly"
NOT_CONVEX = "NotConvex"


# -- rationals ---------------------------------------------------------------

def to_rational(value: Union[int, str, Fraction, float, "mpq"]) -> mpq:
    """Exact conversion; strings may be ``"3/2"``, ``"-0.25"`` or ``"1e-3"``."""
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def point(x, y) -> Point:
    return (to_rational(x), to_rational(y))


def make_drawing(positions: Mapping[int, Sequence]) -> Drawing:
    """Convert any ``{vertex: (x, y)}`` mapping into exact coordinates."""
    return {int(v): point(p[0], p[1]) for v, p in positions.items()}


def drawings_equal(d1: Mapping[int, Point], d2: Mapping[int, Point]) -> bool:
    return set(d1) == set(d2) and all(
        d1[v][0] == d2[v][0] and d1[v][1] == d2[v][1] for v in d1
    )


def interpolate(d1: Mapping[int, Point], d2: Mapping[int, Point], t) -> Drawing:
    """Drawing at time ``t`` of the linear morph from ``d1`` to ``d2``."""
    t = to_rational(t)
    s = ONE - t
    return {
        v: (s * d1[v][0] + t * d2[v][0], s * d1[v][1] + t * d2[v][1]) for v in d1
    }


# -- primitive predicates ----------------------------------------------------

def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def cross(u: Point, v: Point) -> mpq:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> mpq:
    return u[0] * v[0] + u[1] * v[1]


def sign(x) -> int:
    return (x > 0) - (x < 0)


def turn(a: Point, b: Point, c: Point) -> mpq:
    """Exact value of ``(b - a) x (c - b)``."""
    return (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a -> b -> c: +1 left, 0 collinear, -1 right."""
    return sign(turn(a, b, c))


def projection(p: Point, d: Direction) -> mpq:
    return p[0] * d[0] + p[1] * d[1]


def perpendicular(d: Direction) -> Direction:
    """``d`` rotated a quarter turn counterclockwise."""
    return (-d[1], d[0])


# -- drawing validation ------------------------------------------------------

@dataclass
class ConvexityReport:
    """Outcome of :func:`check_drawing`.

    Attributes:
        verdict: ``StrictlyConvex``, ``ConvexOnly`` or ``NotConvex``.
        flat_corners: ``(vertex, face index)`` pairs with a straight angle.
        bad_corners: ``(vertex, face index)`` pairs violating convexity.
        bad_faces: face indices whose boundary does not wind exactly once.
    """

    verdict: str
    flat_corners: list = field(default_factory=list)
    bad_corners: list = field(default_factory=list)
    bad_faces: list = field(default_factory=list)

    @property
    def is_strict(self) -> bool:
        return self.verdict == STRICT

    @property
    def is_convex(self) -> bool:
        return self.verdict in (STRICT, CONVEX)

    def passes(self, mode: str) -> bool:
        return self.is_strict if mode == "strict" else self.is_convex

    def to_dict(self) -> dict:
        return {
            "class": self.verdict,
            "flat_corners": [list(c) for c in self.flat_corners],
            "bad_corners": [list(c) for c in self.bad_corners],
            "bad_faces": list(self.bad_faces),
        }


def _half_plane_class(dx, dy) -> int:
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def face_walk(graph: PlaneGraph, index: int) -> tuple[int, ...]:
    """Face boundary oriented so that a convex drawing turns left everywhere."""
    face = graph.faces[index]
    return face.boundary[::-1] if face.is_outer else face.boundary


def polygon_status(pts: Sequence[Point]) -> tuple[list[int], list[int], bool]:
    """Classify a closed polygon expected to turn left.

    Returns:
        Indices of flat corners, indices of bad corners, and whether the
        boundary winds exactly once.
    """
    k = len(pts)
    flat, bad = [], []
    transitions = 0
    for i in range(k):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % k]
        u = (b[0] - a[0], b[1] - a[1])
        w = (c[0] - b[0], c[1] - b[1])
        o = u[0] * w[1] - u[1] * w[0]
        if o < 0 or (o == 0 and u[0] * w[0] + u[1] * w[1] <= 0):
            bad.append(i)
        elif o == 0:
            flat.append(i)
        if _half_plane_class(*u) == 0 and _half_plane_class(*w) == 1:
            transitions += 1
    return flat, bad, transitions == 1


def check_drawing(
    graph: PlaneGraph,
    drawing: Mapping[int, Point],
    faces: Iterable[int] | None = None,
) -> ConvexityReport:
    """Classify ``drawing`` as strictly convex, convex, or neither.

    Every internal face must be a convex polygon traversed counterclockwise
    and the outer face a convex polygon traversed clockwise, each winding
    exactly once.  Together these certify that the straight-line drawing is
    planar.

    Args:
        graph: The plane graph.
        drawing: Exact coordinates for every vertex.
        faces: Optional subset of face indices to inspect.

    Raises:
        MissingCoordinates: A vertex has no position.
        DegenerateEdge: Two adjacent vertices coincide.
    """
    missing = [v for v in graph.vertices if v not in drawing]
    if missing:
        raise MissingCoordinates(f"no coordinates for vertices {missing}")
    for u, v in graph.edges:
        if drawing[u][0] == drawing[v][0] and drawing[u][1] == drawing[v][1]:
            raise DegenerateEdge(f"edge ({u},{v}) has coincident endpoints")
    report = ConvexityReport(STRICT)
    indices = range(len(graph.faces)) if faces is None else faces
    for fi in indices:
        walk = face_walk(graph, fi)
        flat, bad, winds = polygon_status([drawing[v] for v in walk])
        report.flat_corners.extend((walk[i], fi) for i in flat)
        report.bad_corners.extend((walk[i], fi) for i in bad)
        if not winds:
            report.bad_faces.append(fi)
    if report.bad_corners or report.bad_faces:
        report.verdict = NOT_CONVEX
    elif report.flat_corners:
        report.verdict = CONVEX
    return report


def flat_angle_count(graph: PlaneGraph, drawing: Mapping[int, Point]) -> int:
    return len(check_drawing(graph, drawing).flat_corners)


# -- directions --------------------------------------------------------------

def stern_brocot():
    """Positive rationals by depth of the Stern-Brocot tree: 1, 1/2, 2, 1/3, ..."""
    level = [(0, 1), (1, 0)]
    while True:
        nxt = [level[0]]
        for (a, b), (c, d) in zip(level, level[1:]):
            m = (a + c, b + d)
            yield mpq(m[0], m[1])
            nxt.extend((m, (c, d)))
        level = nxt


def _points_of(drawings) -> list[Point]:
    if isinstance(drawings, Mapping):
        drawings = [drawings]
    pts = {p for d in drawings for p in d.values()}
    return sorted(pts)


def is_generic(points: Sequence[Point], d: Direction) -> bool:
    """No line through two distinct points is orthogonal or parallel to ``d``."""
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            v = sub(p, q)
            if v == (0, 0):
                continue
            if dot(v, d) == 0 or cross(v, d) == 0:
                return False
    return True


def generic_direction(drawings) -> Direction:
    """Deterministic direction ``(1, s)`` generic for all supplied points.

    Slopes ``s`` are tried in Stern-Brocot order; the forbidden slopes are
    finite, so the search terminates.
    """
    pts = _points_of(drawings)
    forbidden = set()
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            vx, vy = q[0] - p[0], q[1] - p[1]
            if vy != 0:
                forbidden.add(-vx / vy)  # orthogonal to (1, s)
            if vx != 0:
                forbidden.add(vy / vx)  # parallel to (1, s)
    for s in stern_brocot():
        if s not in forbidden:
            return (ONE, s)
    raise AssertionError("unreachable")


def is_monotone(points: Sequence[Point], d: Direction, closed: bool = False) -> bool:
    """Whether a path (or closed polygon) is monotone in direction ``d``.

    Ties between consecutive projections count as non-monotone.  A polygon
    is monotone when its boundary splits into one increasing and one
    decreasing chain, i.e. the sign of consecutive differences changes
    exactly twice around the cycle.
    """
    proj = [projection(p, d) for p in points]
    k = len(proj)
    if closed:
        if k < 3:
            return False
        diffs = [proj[(i + 1) % k] - proj[i] for i in range(k)]
        if any(x == 0 for x in diffs):
            return False
        changes = sum(1 for i in range(k) if (diffs[i] > 0) != (diffs[i - 1] > 0))
        return changes == 2
    diffs = [proj[i + 1] - proj[i] for i in range(k - 1)]
    return all(x > 0 for x in diffs) or all(x < 0 for x in diffs)


def _ccw(poly: Sequence[Point]) -> list[Point]:
    area = sum(cross(poly[i - 1], poly[i]) for i in range(len(poly)))
    return list(poly) if area > 0 else list(poly)[::-1]


def _strictly_convex(poly: Sequence[Point]) -> bool:
    flat, bad, winds = polygon_status(_ccw(poly))
    return not flat and not bad and winds


def merged_monotone_direction(
    q1: Sequence[Point], q2: Sequence[Point], e: tuple[Point, Point]
) -> Direction:
    """Direction in which the union of two polygons glued along ``e`` is monotone.

    Starts from the normal of ``e`` and tilts it by ``delta`` times the edge
    direction, halving ``delta`` (trying both signs) until the merged
    boundary passes :func:`is_monotone`.

    Raises:
        NotStrictlyConvex: One of the polygons is not strictly convex.
        SameSide: The polygons do not lie on opposite sides of ``e``.
    """
    for q in (q1, q2):
        if not _strictly_convex(q):
            raise NotStrictlyConvex("polygon is not strictly convex")
    p1, p2 = _ccw(q1), _ccw(q2)
    a, b = e
    if a not in p1 or b not in p1 or a not in p2 or b not in p2:
        raise SameSide("edge is not shared by both polygons")
    i = p1.index(a)
    if p1[(i + 1) % len(p1)] != b:
        a, b = b, a
        i = p1.index(a)
    if p1[(i + 1) % len(p1)] != b:
        raise SameSide("shared segment is not an edge of the first polygon")
    j = p2.index(b)
    if p2[(j + 1) % len(p2)] != a:
        raise SameSide("polygons lie on the same side of the shared edge")
    # ccw merged boundary: p1 from b around to a, then p2 from a around to b
    merged = [p1[(i + 1 + k) % len(p1)] for k in range(len(p1))]
    merged += [p2[(j + 2 + k) % len(p2)] for k in range(len(p2) - 2)]
    ev = sub(b, a)
    normal = perpendicular(ev)
    delta = mpq(1, 2)
    for _ in range(256):
        for sgn in (1, -1):
            d = (normal[0] + sgn * delta * ev[0], normal[1] + sgn * delta * ev[1])
            if is_monotone(merged, d, closed=True):
                return d
        delta /= 2
    raise ValidationExhausted("no monotone direction found near the edge normal")


# -- level frames ------------------------------------------------------------

def to_frame(p: Point, d: Direction) -> tuple[mpq, mpq]:
    """Coordinates ``(X, Y)`` with ``Y = p . d`` the level value.

    ``X`` is a signed copy of one Cartesian coordinate, chosen so that the
    map is a positively oriented shear.  Unlike a rotation it needs no
    division by ``|d|^2``: the inverse divides by the larger component of
    ``d`` only, so dyadic points stay dyadic when that component is ``+-1``.
    """
    Y = p[0] * d[0] + p[1] * d[1]
    if abs(d[0]) >= abs(d[1]):
        return (-p[1] if d[0] > 0 else p[1], Y)
    return (p[0] if d[1] > 0 else -p[0], Y)


def from_frame(xy: tuple, d: Direction) -> Point:
    X, Y = xy
    if abs(d[0]) >= abs(d[1]):
        y = -X if d[0] > 0 else X
        return ((Y - d[1] * y) / d[0], y)
    x = X if d[1] > 0 else -X
    return (x, (Y - d[0] * x) / d[1])
