"""Peeling a convex graph down to its outer cycle.

:func:`decompose` returns graphs ``G_1 = G, ..., G_l = C`` where each graph
is a subdivision of a simple internally triconnected plane graph and each
step deletes either an internal path of degree-2 internal vertices or a
degree-3 internal vertex together with three paths to the outer cycle.

Two strategies are available.  ``"proof"`` follows the classical reverse
construction: inside a triconnected piece it grows the piece from its outer
cycle by a tripod and then by augmenting paths of maximum size, and it
splits off minimal pockets at separation pairs.  Its path searches are
exhaustive, so it is used for small skeletons only.  ``"greedy"`` picks, at
each step, the first candidate removal whose result is still convex; such a
removal always exists because every convex graph starts some valid
sequence.  ``"auto"`` uses the first strategy on small pieces and the second
elsewhere.  Every produced step is validated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .connectivity import (
    NOT_CONVEX,
    classify_convexity,
    components,
    is_internally_triconnected,
    is_internally_triconnected_bruteforce,
    is_triconnected,
    separation_pairs,
)
from .errors import (
    GraphError,
    NoAugmentingPath,
    NoInternalVertex,
    NotConvexInput,
    NoTwoComponentPair,
    ValidationExhausted,
)
from .graph_core import (
    Edge,
    PlaneGraph,
    SmoothingMap,
    chains,
    edge_key,
    keep_edges,
    remove_subgraph,
    skeleton,
    smooth,
)

PROOF_LIMIT = 10


def validation_profile() -> str:
    return os.environ.get("CONVEXMORPH_VALIDATE", "release").strip().lower()


# -- removals ----------------------------------------------------------------

@dataclass(frozen=True)
class PathRemoval:
    """Delete the edges and interior vertices of ``path``."""

    path: tuple[int, ...]

    kind = "path"

    def edges(self) -> list[Edge]:
        p = self.path
        return [edge_key(p[i], p[i + 1]) for i in range(len(p) - 1)]

    def removed_vertices(self) -> list[int]:
        return list(self.path[1:-1])

    def to_dict(self) -> dict:
        return {"kind": "path", "path": list(self.path)}


@dataclass(frozen=True)
class TripodRemoval:
    """Delete ``center`` and three paths from it to the outer cycle."""

    center: int
    paths: tuple[tuple[int, ...], ...]

    kind = "tripod"

    @property
    def ends(self) -> tuple[int, ...]:
        return tuple(p[-1] for p in self.paths)

    def edges(self) -> list[Edge]:
        return [edge_key(p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1)]

    def removed_vertices(self) -> list[int]:
        return [self.center] + [v for p in self.paths for v in p[1:-1]]

    def to_dict(self) -> dict:
        return {"kind": "tripod", "center": self.center, "paths": [list(p) for p in self.paths]}


Removal = PathRemoval | TripodRemoval


@dataclass
class DecompositionStep:
    """One graph of the sequence with its skeleton and outgoing removal."""

    graph: PlaneGraph
    smoothed: PlaneGraph
    map: SmoothingMap
    removal: Removal | None = None


def apply_removal(graph: PlaneGraph, removal: Removal) -> PlaneGraph:
    return remove_subgraph(graph, removal.edges(), removal.removed_vertices())


def removal_is_well_formed(graph: PlaneGraph, removal: Removal, outer: frozenset[int]) -> bool:
    """Check the combinatorial shape of a removal against ``graph``.

    Args:
        graph: The graph the removal applies to.
        removal: The removal.
        outer: Vertices of the outer cycle of the input graph.
    """
    def inner_ok(vs: Sequence[int]) -> bool:
        return all(graph.degree(v) == 2 and graph.is_internal(v) for v in vs)

    if isinstance(removal, PathRemoval):
        p = removal.path
        if len(p) < 2 or not all(graph.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)):
            return False
        return inner_ok(p[1:-1])
    u = removal.center
    if graph.degree(u) != 3 or not graph.is_internal(u) or len(removal.paths) != 3:
        return False
    seen = {u}
    for p in removal.paths:
        if p[0] != u or p[-1] not in outer:
            return False
        if not all(graph.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)):
            return False
        if not inner_ok(p[1:-1]) or seen & set(p[1:]):
            return False
        seen.update(p[1:])
    return True


def claim_check(graph: PlaneGraph, brute: bool = True) -> bool:
    """Skeleton of ``graph`` is simple, plane and internally triconnected."""
    try:
        h, _ = skeleton(graph)
    except GraphError:
        return False
    if h.is_cycle():
        return h.n == 3
    return is_internally_triconnected_bruteforce(h) if brute else is_internally_triconnected(h)


def _is_convex(graph: PlaneGraph) -> bool:
    return classify_convexity(graph).tag != NOT_CONVEX


# -- greedy strategy ---------------------------------------------------------

def candidate_removals(graph: PlaneGraph) -> Iterator[Removal]:
    """Internal chains, then degree-3 tripods, in deterministic order."""
    for path in sorted(chains(graph)):
        if graph.is_internal_edge(path[0], path[1]):
            yield PathRemoval(path)
    outer = graph.outer_vertices
    for u in graph.vertices:
        if graph.degree(u) != 3 or not graph.is_internal(u):
            continue
        legs = []
        for w in graph.neighbors(u):
            path = [u, w]
            while graph.degree(path[-1]) == 2:
                a, b = graph.neighbors(path[-1])
                path.append(b if a == path[-2] else a)
            legs.append(tuple(path))
        ends = {p[-1] for p in legs}
        if len(ends) == 3 and ends <= outer:
            yield TripodRemoval(u, tuple(sorted(legs)))


def greedy_removal(graph: PlaneGraph) -> Removal:
    for removal in candidate_removals(graph):
        try:
            nxt = apply_removal(graph, removal)
        except GraphError:
            continue
        if _is_convex(nxt):
            return removal
    raise NoAugmentingPath("no removal keeps the graph convex")


# -- reverse construction ----------------------------------------------------

def _simple_paths(adj, start: int, allowed, targets, first_step_ok=None) -> Iterator[tuple[int, ...]]:
    """All simple paths from ``start`` whose interior lies in ``allowed`` and
    whose last vertex lies in ``targets``."""
    stack = [(start, [start])]
    while stack:
        v, path = stack.pop()
        for w in sorted(adj[v]):
            if w in path:
                continue
            if len(path) == 1 and first_step_ok is not None and not first_step_ok(w):
                continue
            if w in targets:
                yield tuple(path + [w])
            if w in allowed:
                stack.append((w, path + [w]))


def tripod_candidates(h: PlaneGraph) -> list[tuple[int, tuple]]:
    """Every internal vertex with three disjoint paths to the outer cycle."""
    adj = h.adjacency()
    outer = h.outer_vertices
    inner = {v for v in h.vertices if v not in outer}
    out = []
    for v in sorted(inner):
        paths = list(_simple_paths(adj, v, inner, outer))
        for trio in combinations(paths, 3):
            used = [set(p[1:]) for p in trio]
            if used[0] & used[1] or used[0] & used[2] or used[1] & used[2]:
                continue
            out.append((v, tuple(sorted(trio))))
    return out


def find_tripod(h: PlaneGraph) -> TripodRemoval:
    """Tripod covering the most vertices of ``h``; ties broken lexicographically.

    Raises:
        NoInternalVertex: ``h`` has no internal vertex.
    """
    if all(v in h.outer_vertices for v in h.vertices):
        raise NoInternalVertex("graph has no internal vertex")
    cands = tripod_candidates(h)
    if not cands:
        raise NoInternalVertex("no internal vertex reaches the outer cycle three times")

    def key(c):
        v, trio = c
        return (-(1 + sum(len(p) - 1 for p in trio)), (v,) + sum(trio, ()))

    v, trio = min(cands, key=key)
    return TripodRemoval(v, trio)


def _lift(path: Sequence[int], mp: SmoothingMap) -> tuple[int, ...]:
    out = [path[0]]
    for a, b in zip(path, path[1:]):
        out.extend(mp.path(a, b)[1:])
    return tuple(out)


def _chain_through(edges: set[Edge], z: int) -> tuple[int, ...]:
    """Maximal path through ``z`` whose interior vertices have degree 2."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    a, b = sorted(adj[z])
    left, right = [z, a], [z, b]
    for side in (left, right):
        while len(adj[side[-1]]) == 2 and side[-1] != z:
            x, y = adj[side[-1]]
            side.append(y if x == side[-2] else x)
    return tuple(left[::-1][:-1] + right)


def extend_by_path(
    current: set[Edge], target: PlaneGraph, h_target: PlaneGraph
) -> PathRemoval:
    """Path to add to the subgraph ``current`` of ``target`` (Cases A and B).

    Args:
        current: Edge set of the present subgraph ``G_j``.
        target: The graph ``G_i`` being rebuilt.
        h_target: Skeleton of ``target`` (all degree-2 vertices smoothed).

    Returns:
        The added path, as a removal from the enlarged graph.

    Raises:
        NoAugmentingPath: Neither case yields a path.
    """
    deg: dict[int, int] = {}
    for a, b in current:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    in_cur = set(deg)
    adj = target.adjacency()
    outside = {v for v in target.vertices if v not in in_cur}
    h_vertices = set(h_target.vertices)

    def size(p):
        return sum(1 for v in p if v in h_vertices)

    def best(paths):
        paths = list(paths)
        if not paths:
            return None
        return min(paths, key=lambda p: (-size(p), p))

    zs = sorted(v for v in in_cur if deg[v] == 2 and target.degree(v) >= 3)
    if zs:
        chain = _chain_through(current, zs[0])
        on_chain = set(chain)
        cands = []
        for u1 in chain[1:-1]:
            for p in _simple_paths(adj, u1, outside, in_cur - on_chain):
                if len(p) == 2 and edge_key(*p) in current:
                    continue
                cands.append(p)
        got = best(cands)
        if got is not None:
            return PathRemoval(got)
        raise NoAugmentingPath(f"case A: nothing leaves the chain through {zs[0]}")
    branch = {v for v in in_cur if deg[v] >= 3}
    cands = []
    for u1 in sorted(branch):
        if not target.is_internal(u1) or u1 not in h_vertices:
            continue
        for p in _simple_paths(adj, u1, outside, branch):
            if len(p) == 2 and edge_key(*p) in current:
                continue
            cands.append(p)
    got = best(cands)
    if got is None:
        raise NoAugmentingPath("case B: no path starts at an internal skeleton vertex")
    return PathRemoval(got)


def _full_check(target: PlaneGraph, edges: set[Edge]) -> bool:
    g = keep_edges(target, edges)
    try:
        h, _ = smooth(g, "all")
    except GraphError:
        return False
    return h.n >= 4 and is_triconnected(h)


def reverse_construction(x: PlaneGraph) -> list[Removal]:
    """Forward removals peeling ``x`` (a subdivision of a triconnected graph)
    down to its outer cycle, built from the cycle upwards."""
    h, mp = smooth(x, "all")
    outer_edges = {edge_key(a, b) for a, b in x.outer_face.darts}
    tripod = find_tripod(h)
    lifted = TripodRemoval(tripod.center, tuple(_lift(p, mp) for p in tripod.paths))
    current = outer_edges | set(lifted.edges())
    added: list[Removal] = [lifted]
    while len(current) < len(x.edges):
        step = extend_by_path(current, x, h)
        current |= set(step.edges())
        if not _full_check(x, current):
            raise ValidationExhausted(f"augmented graph fails the triconnectivity check at {step}")
        added.append(step)
    return added[::-1]


# -- pockets -----------------------------------------------------------------

def split_off_pocket(
    graph: PlaneGraph, pair: tuple[int, int] | None = None
) -> tuple[PlaneGraph, PlaneGraph, tuple[int, ...]]:
    """Minimal pocket at a two-component separation pair of the skeleton.

    Returns:
        ``(D, M, Q)``: the subgraph of ``graph`` made of the minimal split
        component and the outer path ``Q`` closing it, the triconnected graph
        obtained by replacing ``Q`` with an edge, and ``Q`` itself.

    Raises:
        NoTwoComponentPair: The skeleton has no suitable separation pair.
    """
    h, mp = skeleton(graph)
    pairs = [sp for sp in separation_pairs(h) if len(sp.components) == 2]
    if pair is not None:
        pairs = [sp for sp in pairs if {sp.u, sp.v} == set(pair)]
    if not pairs:
        raise NoTwoComponentPair("no separation pair with two split components")
    adj = h.adjacency()
    best = None
    for sp in pairs:
        for comp in components(adj, {sp.u, sp.v}):
            key = (len(comp), sp.u, sp.v, sorted(comp))
            if best is None or key < best[0]:
                best = (key, sp, comp)
    _, sp, comp = best
    u, v = sp.u, sp.v
    a_vertices = comp | {u, v}
    a_edges = {edge_key(x, y) for x in comp for y in adj[x] if y in a_vertices}
    g_edges = set()
    for e in a_edges:
        p = mp.path(*e)
        g_edges.update(edge_key(p[i], p[i + 1]) for i in range(len(p) - 1))
    a_g_vertices = {w for e in g_edges for w in e}
    ring = list(graph.outer_face.boundary)
    k = len(ring)
    i = ring.index(u)
    arcs = []
    for step in (1, -1):
        arc = [u]
        j = i
        while ring[j] != v:
            j = (j + step) % k
            arc.append(ring[j])
        arcs.append(tuple(arc))
    q = next(a for a in arcs if not set(a[1:-1]) & a_g_vertices)
    g_edges.update(edge_key(q[t], q[t + 1]) for t in range(len(q) - 1))
    d = keep_edges(graph, g_edges)
    m, _ = smooth(d, "all")
    if not is_triconnected(m):
        raise NoTwoComponentPair(f"pocket at {{{u},{v}}} is not triconnected")
    return d, m, q


# -- driver ------------------------------------------------------------------

def _three_component_removal(graph: PlaneGraph, h: PlaneGraph, mp: SmoothingMap) -> Removal | None:
    for sp in separation_pairs(h):
        if len(sp.components) == 3 and h.has_edge(sp.u, sp.v) and h.is_internal_edge(sp.u, sp.v):
            return PathRemoval(mp.path(sp.u, sp.v))
    return None


def _plan(graph: PlaneGraph, method: str) -> list[Removal]:
    """Next batch of forward removals from ``graph``."""
    h, mp = skeleton(graph)
    r = _three_component_removal(graph, h, mp)
    if r is not None:
        return [r]
    if method != "greedy":
        if not separation_pairs(h):
            if method == "proof" or h.n <= PROOF_LIMIT:
                return reverse_construction(graph)
        else:
            d, m, _ = split_off_pocket(graph)
            if method == "proof" or m.n <= PROOF_LIMIT:
                return reverse_construction(d)
    return [greedy_removal(graph)]


def next_removal(graph: PlaneGraph, method: str = "auto") -> Removal | None:
    """First removal of the decomposition of ``graph`` (``None`` for a cycle)."""
    if graph.is_cycle():
        return None
    return _plan(graph, method)[0]


def decompose(
    graph: PlaneGraph, method: str = "auto", validate: bool | None = None
) -> list[DecompositionStep]:
    """Decompose a convex graph down to its outer cycle.

    Args:
        graph: A convex plane graph.
        method: ``"auto"``, ``"proof"`` or ``"greedy"``.
        validate: Re-check every step; defaults to on, using the brute-force
            checker in the ``debug`` profile.

    Raises:
        NotConvexInput: ``graph`` is not convex.
    """
    if not _is_convex(graph):
        raise NotConvexInput("graph is not convex")
    brute = validation_profile() == "debug"
    if validate is None:
        validate = True
    outer = graph.outer_vertices
    steps: list[DecompositionStep] = []
    g = graph
    while True:
        h, mp = skeleton(g)
        if g.is_cycle():
            steps.append(DecompositionStep(g, h, mp, None))
            break
        for r in _plan(g, method):
            if validate and not removal_is_well_formed(g, r, outer):
                raise ValidationExhausted(f"malformed removal {r}")
            steps.append(DecompositionStep(g, *skeleton(g), r))
            g = apply_removal(g, r)
            if validate and not claim_check(g, brute):
                raise ValidationExhausted(f"graph after {r} is not convex")
    if validate:
        if steps[0].graph != graph or set(steps[-1].graph.vertices) != set(outer):
            raise ValidationExhausted("sequence does not run from the input to its outer cycle")
    return steps


def replay(steps: Sequence[DecompositionStep], original: PlaneGraph) -> PlaneGraph:
    """Rebuild the first graph by re-adding removals from the last graph up."""
    edges = set(steps[-1].graph.edges)
    for step in reversed(steps[:-1]):
        edges |= set(step.removal.edges())
        if keep_edges(original, edges) != step.graph:
            raise ValidationExhausted("replay diverges from the recorded sequence")
    return keep_edges(original, edges)
