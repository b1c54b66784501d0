"""Plane graphs stored as rotation systems.

A :class:`PlaneGraph` is an immutable combinatorial embedding: for every
vertex the clockwise cyclic order of its neighbours, plus one directed edge
("dart") lying on the outer face.  Faces are traced eagerly on construction.

Face tracing uses ``next(u -> v) = (v, cw_succ(v, u))``.  With that rule the
face lies to the left of every dart, so in a planar drawing (y axis up)
internal faces come out counterclockwise and the outer face clockwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadOuterFace,
    Disconnected,
    NonPlanarRotation,
    NotSimple,
    SmoothingCreatesLoop,
    SmoothingCreatesParallelEdge,
    UnknownElement,
    WouldDisconnect,
)

Edge = tuple[int, int]
Dart = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """A face given by its boundary walk (vertex sequence, cyclic)."""

    boundary: tuple[int, ...]
    is_outer: bool = False

    @property
    def darts(self) -> list[Dart]:
        b = self.boundary
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.boundary)

    def __len__(self) -> int:
        return len(self.boundary)

    def corners(self) -> list[tuple[int, int, int]]:
        """Consecutive triples ``(prev, vertex, next)`` along the walk."""
        b = self.boundary
        k = len(b)
        return [(b[i - 1], b[i], b[(i + 1) % k]) for i in range(k)]


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    k = len(seq)
    best = min(range(k), key=lambda i: tuple(seq[(i + j) % k] for j in range(k)))
    return tuple(seq[(best + j) % k] for j in range(k))


class PlaneGraph:
    """Immutable connected simple plane graph."""

    __slots__ = (
        "_rotation", "_pos", "_outer_dart", "_faces", "_outer_index",
        "_edges", "_dart_face", "_outer_vertices", "_hash",
    )

    def __init__(self, rotation: Mapping[int, Sequence[int]], outer_dart: Dart):
        rot = {int(v): tuple(int(w) for w in nbrs) for v, nbrs in rotation.items()}
        self._rotation = dict(sorted(rot.items()))
        _validate_rotation(self._rotation)
        self._pos = {v: {w: i for i, w in enumerate(n)} for v, n in self._rotation.items()}
        self._edges = frozenset(
            edge_key(v, w) for v, nbrs in self._rotation.items() for w in nbrs
        )
        if not self._edges:
            raise Disconnected("a plane graph needs at least one edge")
        if not _connected(self._rotation):
            raise Disconnected("graph is not connected")
        outer_dart = (int(outer_dart[0]), int(outer_dart[1]))
        if outer_dart[0] not in self._pos or outer_dart[1] not in self._pos[outer_dart[0]]:
            raise BadOuterFace(f"outer dart {outer_dart} is not an edge")
        self._outer_dart = outer_dart
        self._trace()
        nv, ne, nf = len(self._rotation), len(self._edges), len(self._faces)
        if nv - ne + nf != 2:
            raise NonPlanarRotation(f"Euler check failed: V-E+F = {nv}-{ne}+{nf}")
        self._hash = None

    # -- construction helpers -------------------------------------------------
    def _trace(self) -> None:
        seen: dict[Dart, int] = {}
        boundaries: list[tuple[int, ...]] = []
        for v in self._rotation:
            for w in self._rotation[v]:
                if (v, w) in seen:
                    continue
                walk = []
                dart = (v, w)
                while dart not in seen:
                    seen[dart] = len(boundaries)
                    walk.append(dart[0])
                    a, b = dart
                    dart = (b, self.cw_succ(b, a))
                boundaries.append(tuple(walk))
        self._dart_face = seen
        self._outer_index = seen[self._outer_dart]
        self._faces = [
            Face(b, i == self._outer_index) for i, b in enumerate(boundaries)
        ]
        self._outer_vertices = frozenset(self._faces[self._outer_index].boundary)

    # -- basic accessors ------------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rotation)

    @property
    def rotation(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rotation)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def faces(self) -> list[Face]:
        return list(self._faces)

    @property
    def outer_face(self) -> Face:
        return self._faces[self._outer_index]

    @property
    def internal_faces(self) -> list[Face]:
        return [f for f in self._faces if not f.is_outer]

    @property
    def outer_dart(self) -> Dart:
        return self._outer_dart

    @property
    def outer_vertices(self) -> frozenset[int]:
        return self._outer_vertices

    @property
    def n(self) -> int:
        return len(self._rotation)

    @property
    def num_internal_faces(self) -> int:
        return len(self._faces) - 1

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._rotation[v]

    def degree(self, v: int) -> int:
        return len(self._rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._pos and v in self._pos[u]

    def is_internal(self, v: int) -> bool:
        return v not in self._outer_vertices

    def is_internal_edge(self, u: int, v: int) -> bool:
        return self._dart_face[(u, v)] != self._outer_index and (
            self._dart_face[(v, u)] != self._outer_index
        )

    def cw_succ(self, v: int, u: int) -> int:
        nbrs = self._rotation[v]
        return nbrs[(self._pos[v][u] + 1) % len(nbrs)]

    def ccw_succ(self, v: int, u: int) -> int:
        nbrs = self._rotation[v]
        return nbrs[(self._pos[v][u] - 1) % len(nbrs)]

    def face_of_dart(self, u: int, v: int) -> Face:
        return self._faces[self._dart_face[(u, v)]]

    def face_index_of_dart(self, u: int, v: int) -> int:
        return self._dart_face[(u, v)]

    def adjacency(self) -> dict[int, set[int]]:
        return {v: set(n) for v, n in self._rotation.items()}

    def is_cycle(self) -> bool:
        return all(len(n) == 2 for n in self._rotation.values())

    def canonical(self) -> tuple:
        rot = tuple((v, _canonical_cycle(n)) for v, n in self._rotation.items())
        return rot, _canonical_cycle(self.outer_face.boundary)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.canonical())
        return self._hash

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, e={len(self._edges)}, faces={len(self._faces)})"


def _validate_rotation(rot: Mapping[int, tuple[int, ...]]) -> None:
    for v, nbrs in rot.items():
        if v in nbrs:
            raise NotSimple(f"loop at vertex {v}")
        if len(set(nbrs)) != len(nbrs):
            raise NotSimple(f"parallel edges at vertex {v}")
        for w in nbrs:
            if w not in rot:
                raise UnknownElement(f"neighbour {w} of {v} is not a vertex")
            if v not in rot[w]:
                raise NonPlanarRotation(f"edge ({v},{w}) appears in only one rotation")


def _connected(adj: Mapping[int, Iterable[int]]) -> bool:
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(adj)


def build_plane_graph(
    vertices: Iterable[int],
    rotation: Mapping[int, Sequence[int]],
    outer_face: Sequence[int] | Dart,
) -> PlaneGraph:
    """Validate an embedding and return the :class:`PlaneGraph`.

    ``outer_face`` is the boundary walk of the outer face, in either
    direction.  A 2-tuple is read as a dart on the outer face.
    """
    verts = [int(v) for v in vertices]
    rot = {int(v): list(n) for v, n in rotation.items()}
    if set(verts) != set(rot):
        raise UnknownElement("vertex list and rotation keys differ")
    cycle = [int(v) for v in outer_face]
    if len(cycle) < 2:
        raise BadOuterFace("outer face needs at least two vertices")
    probe = (cycle[0], cycle[1])
    if probe[0] not in rot or probe[1] not in rot[probe[0]]:
        raise BadOuterFace(f"{probe} is not an edge")
    graph = PlaneGraph(rot, probe)
    if len(cycle) == 2:
        return graph
    # an exact match wins, so the two faces of a cycle stay distinguishable
    for want in (_canonical_cycle(cycle), _canonical_cycle(cycle[::-1])):
        for face in graph.faces:
            if _canonical_cycle(face.boundary) == want:
                a, b = face.boundary[0], face.boundary[1]
                return PlaneGraph(rot, (a, b))
    raise BadOuterFace(f"no traced face has boundary {cycle}")


def trace_faces(graph: PlaneGraph) -> list[Face]:
    return graph.faces


def remove_subgraph(
    graph: PlaneGraph,
    edges: Iterable[Edge] = (),
    vertices: Iterable[int] = (),
) -> PlaneGraph:
    """Delete edges and/or vertices; the embedding of the rest is induced."""
    gone_v = set(int(v) for v in vertices)
    gone_e = set()
    for u, v in edges:
        if not graph.has_edge(u, v):
            raise UnknownElement(f"({u},{v}) is not an edge")
        gone_e.add(edge_key(u, v))
    for v in gone_v:
        if v not in graph.rotation:
            raise UnknownElement(f"{v} is not a vertex")
    rot = {
        v: [w for w in nbrs if w not in gone_v and edge_key(v, w) not in gone_e]
        for v, nbrs in graph.rotation.items()
        if v not in gone_v
    }
    if not rot or any(not n for n in rot.values()) or not _connected(rot):
        raise WouldDisconnect("removal disconnects the graph")
    for a, b in graph.outer_face.darts:
        if a in rot and b in rot[a]:
            return PlaneGraph(rot, (a, b))
    raise WouldDisconnect("removal destroys the whole outer boundary")


def keep_edges(graph: PlaneGraph, edges: Iterable[Edge]) -> PlaneGraph:
    """Subgraph spanned by ``edges`` with the induced embedding."""
    keep = {edge_key(u, v) for u, v in edges}
    drop_e = [e for e in graph.edges if e not in keep]
    used = {v for e in keep for v in e}
    drop_v = [v for v in graph.vertices if v not in used]
    return remove_subgraph(graph, drop_e, drop_v)


@dataclass(frozen=True)
class SmoothingMap:
    """Maps each edge of a smoothed graph to its path in the subdivision."""

    edge_to_path: Mapping[Edge, tuple[int, ...]]

    def path(self, u: int, v: int) -> tuple[int, ...]:
        p = self.edge_to_path[edge_key(u, v)]
        return p if p[0] == u else p[::-1]

    def subdivision_vertices(self) -> set[int]:
        return {w for p in self.edge_to_path.values() for w in p[1:-1]}

    def subdivide(self, smoothed: PlaneGraph) -> PlaneGraph:
        """Re-insert the subdivision vertices into ``smoothed``."""
        rot: dict[int, list[int]] = {}
        for v, nbrs in smoothed.rotation.items():
            rot[v] = [self.path(v, w)[1] for w in nbrs]
        for p in self.edge_to_path.values():
            for i in range(1, len(p) - 1):
                rot[p[i]] = [p[i - 1], p[i + 1]]
        a, b = smoothed.outer_dart
        return PlaneGraph(rot, (a, self.path(a, b)[1]))


def smooth(
    graph: PlaneGraph, scope: str | Iterable[int] = "all"
) -> tuple[PlaneGraph, SmoothingMap]:
    """Replace maximal paths through degree-2 vertices by single edges.

    ``scope`` is ``"all"``, ``"internal"`` (only degree-2 vertices off the
    outer face) or an explicit collection of degree-2 vertices.
    """
    if scope == "all":
        targets = {v for v in graph.vertices if graph.degree(v) == 2}
    elif scope == "internal":
        targets = {
            v for v in graph.vertices if graph.degree(v) == 2 and graph.is_internal(v)
        }
    else:
        targets = {int(v) for v in scope}
        bad = [v for v in targets if graph.degree(v) != 2]
        if bad:
            raise UnknownElement(f"vertices {bad} do not have degree 2")
    if len(targets) == graph.n:
        raise SmoothingCreatesLoop("smoothing a cycle completely leaves a loop")
    rot: dict[int, list[int]] = {}
    paths: dict[Edge, tuple[int, ...]] = {}
    for x in graph.vertices:
        if x in targets:
            continue
        out = []
        for w in graph.neighbors(x):
            path = [x, w]
            while path[-1] in targets:
                a, b = graph.neighbors(path[-1])
                path.append(b if a == path[-2] else a)
            y = path[-1]
            if y == x:
                raise SmoothingCreatesLoop(f"smoothing creates a loop at {x}")
            if y in out:
                raise SmoothingCreatesParallelEdge(f"smoothing duplicates edge ({x},{y})")
            out.append(y)
            key = edge_key(x, y)
            paths[key] = tuple(path) if x < y else tuple(reversed(path))
        rot[x] = out
    dart = None
    for a, b in graph.outer_face.darts:
        if a not in targets:
            y = next(y for y in rot[a] if paths[edge_key(a, y)][1 if a < y else -2] == b)
            dart = (a, y)
            break
    if dart is None:
        raise SmoothingCreatesLoop("outer boundary consists only of smoothed vertices")
    return PlaneGraph(rot, dart), SmoothingMap(paths)


def chains(graph: PlaneGraph) -> list[tuple[int, ...]]:
    """Maximal paths whose interior vertices have degree 2 (branch to branch)."""
    branch = [v for v in graph.vertices if graph.degree(v) != 2]
    seen: set[Edge] = set()
    out = []
    for x in branch:
        for w in graph.neighbors(x):
            if edge_key(x, w) in seen:
                continue
            path = [x, w]
            while graph.degree(path[-1]) == 2:
                a, b = graph.neighbors(path[-1])
                path.append(b if a == path[-2] else a)
            for i in range(len(path) - 1):
                seen.add(edge_key(path[i], path[i + 1]))
            out.append(tuple(path))
    return out


def skeleton(graph: PlaneGraph) -> tuple[PlaneGraph, SmoothingMap]:
    """Smooth degree-2 vertices as far as the result stays simple.

    Internal degree-2 vertices are always smoothed.  On the outer face a
    chain is kept with one subdivision vertex when smoothing it entirely
    would duplicate an existing edge; a bare cycle reduces to a triangle.
    """
    deg2 = {v for v in graph.vertices if graph.degree(v) == 2}
    if len(deg2) == graph.n:
        cyc = _canonical_cycle(graph.outer_face.boundary)
        k = len(cyc)
        kept = {cyc[0], cyc[k // 3], cyc[(2 * k) // 3]}
        return smooth(graph, deg2 - kept)
    kept: set[int] = set()
    taken: set[Edge] = set()
    external = []
    for path in chains(graph):
        interior = path[1:-1]
        if interior and not graph.is_internal(interior[0]):
            external.append(path if path[0] <= path[-1] else path[::-1])
            continue
        key = edge_key(path[0], path[-1])
        if path[0] == path[-1]:
            raise SmoothingCreatesLoop(f"internal chain {path} closes on itself")
        if key in taken:
            raise SmoothingCreatesParallelEdge(f"parallel internal chains at {key}")
        taken.add(key)
    for path in sorted(external):
        x, y = path[0], path[-1]
        key = edge_key(x, y)
        if x == y:
            kept.update((path[1], path[-2]))
        elif key in taken:
            kept.add(path[1])
        else:
            taken.add(key)
    return smooth(graph, deg2 - kept)


def with_edge_inserted(graph: PlaneGraph, u: int, v: int, face: Face) -> PlaneGraph:
    """Insert edge ``(u, v)`` inside ``face`` (both must lie on its boundary)."""
    rot = {x: list(n) for x, n in graph.rotation.items()}
    for a, b in ((u, v), (v, u)):
        b_idx = [i for i, x in enumerate(face.boundary) if x == a]
        if not b_idx:
            raise UnknownElement(f"{a} is not on the face")
        i = b_idx[0]
        prev = face.boundary[i - 1]
        # the face sits clockwise after prev around a; new edge goes right there
        pos = rot[a].index(prev)
        rot[a].insert(pos + 1, b)
    return PlaneGraph(rot, graph.outer_dart)
