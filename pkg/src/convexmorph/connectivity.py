"""Bi- and triconnectivity, separation pairs and convexity classification.

Two implementations are kept side by side: articulation-point based tests
(used by the library) and literal brute-force oracles that delete every
vertex pair and test reachability.  The test-suite checks that they agree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Union

from .errors import GraphError, TooSmall
from .graph_core import Edge, PlaneGraph, edge_key, skeleton

Adjacency = Mapping[int, "set[int] | tuple[int, ...]"]
GraphLike = Union[PlaneGraph, Adjacency]

STRICT = "StrictlyConvex"
CONVEX = "ConvexOnly"
NOT_CONVEX = "NotConvex"


def _adj(g: GraphLike) -> dict[int, set[int]]:
    if isinstance(g, PlaneGraph):
        return g.adjacency()
    return {v: set(n) for v, n in g.items()}


def components(adj: Adjacency, removed: frozenset | set = frozenset()) -> list[set[int]]:
    """Connected components of the graph minus ``removed`` (sorted by min id)."""
    seen: set[int] = set(removed)
    out = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        todo = deque([s])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    todo.append(y)
        out.append(comp)
    return out


def articulation_points(adj: Adjacency, removed: frozenset | set = frozenset()) -> set[int]:
    """Cut vertices of the graph minus ``removed`` (iterative Tarjan)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut: set[int] = set()
    counter = 0
    for root in sorted(adj):
        if root in removed or root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in removed:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        children += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != root and low[v] >= disc[p]:
                    cut.add(p)
        if children > 1:
            cut.add(root)
    return cut


# -- fast tests --------------------------------------------------------------

def is_biconnected(g: GraphLike) -> bool:
    adj = _adj(g)
    return len(components(adj)) == 1 and not articulation_points(adj)


def is_triconnected(g: GraphLike) -> bool:
    """True iff no vertex pair disconnects the graph.

    Raises:
        TooSmall: Fewer than four vertices.
    """
    adj = _adj(g)
    if len(adj) < 4:
        raise TooSmall("triconnectivity needs at least four vertices")
    if not is_biconnected(adj):
        return False
    for v in adj:
        if articulation_points(adj, {v}):
            return False
    return True


def is_internally_triconnected(g: PlaneGraph) -> bool:
    """Biconnected, and triconnected once an apex joins every outer vertex."""
    adj = g.adjacency()
    if not is_biconnected(adj):
        return False
    apex = max(adj) + 1
    adj[apex] = set(g.outer_vertices)
    for v in g.outer_vertices:
        adj[v].add(apex)
    return is_triconnected(adj)


# -- brute-force oracles -----------------------------------------------------

def is_biconnected_bruteforce(g: GraphLike) -> bool:
    adj = _adj(g)
    if len(components(adj)) != 1:
        return False
    return all(len(components(adj, {v})) == 1 for v in adj) if len(adj) > 2 else True


def is_triconnected_bruteforce(g: GraphLike) -> bool:
    adj = _adj(g)
    if len(adj) < 4:
        raise TooSmall("triconnectivity needs at least four vertices")
    if not is_biconnected_bruteforce(adj):
        return False
    return all(len(components(adj, set(p))) == 1 for p in combinations(sorted(adj), 2))


def is_internally_triconnected_bruteforce(g: PlaneGraph) -> bool:
    adj = g.adjacency()
    if not is_biconnected_bruteforce(adj):
        return False
    apex = max(adj) + 1
    adj[apex] = set(g.outer_vertices)
    for v in g.outer_vertices:
        adj[v].add(apex)
    return is_triconnected_bruteforce(adj)


# -- separation pairs --------------------------------------------------------

@dataclass(frozen=True)
class SplitComponent:
    """Edge set of one split component; a bare edge is its own component."""

    edges: frozenset

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    @property
    def is_edge(self) -> bool:
        return len(self.edges) == 1


@dataclass(frozen=True)
class SeparationPair:
    u: int
    v: int
    components: tuple

    def key(self) -> tuple:
        return (self.u, self.v, tuple(sorted(tuple(sorted(c.edges)) for c in self.components)))


def _split(adj: dict[int, set[int]], u: int, v: int) -> SeparationPair | None:
    comps = components(adj, {u, v})
    if len(comps) < 2:
        return None
    parts = []
    for comp in comps:
        verts = comp | {u, v}
        es = frozenset(
            edge_key(x, y)
            for x in comp
            for y in adj[x]
            if y in verts
        )
        parts.append(SplitComponent(es))
    if v in adj[u]:
        parts.append(SplitComponent(frozenset({edge_key(u, v)})))
    parts.sort(key=lambda c: sorted(c.edges))
    return SeparationPair(u, v, tuple(parts))


def separation_pairs(g: GraphLike) -> list[SeparationPair]:
    """All separation pairs with their split components, sorted by pair."""
    adj = _adj(g)
    found = set()
    for u in adj:
        for v in articulation_points(adj, {u}):
            found.add(edge_key(u, v))
    out = []
    for u, v in sorted(found):
        sp = _split(adj, u, v)
        if sp is not None:
            out.append(sp)
    return out


def separation_pairs_bruteforce(g: GraphLike) -> list[SeparationPair]:
    adj = _adj(g)
    out = []
    for u, v in combinations(sorted(adj), 2):
        sp = _split(adj, u, v)
        if sp is not None:
            out.append(sp)
    return out


# -- classification ----------------------------------------------------------

@dataclass
class ConvexityClass:
    """Result of :func:`classify_convexity`.

    Attributes:
        tag: ``StrictlyConvex``, ``ConvexOnly`` or ``NotConvex``.
        witness: Evidence such as the skeleton size, the internal degree-2
            vertices or the reason for rejection.
    """

    tag: str
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"class": self.tag, "witness": self.witness}


def classify_convexity(g: PlaneGraph) -> ConvexityClass:
    """Decide whether ``g`` admits a convex or strictly convex drawing.

    The graph is convex when it is biconnected and its skeleton (degree-2
    vertices smoothed as far as simplicity allows) is internally
    triconnected.  It is strictly convex when moreover no degree-2 vertex is
    internal.
    """
    adj = g.adjacency()
    cuts = articulation_points(adj)
    if len(adj) < 3 or cuts:
        return ConvexityClass(NOT_CONVEX, {"reason": "not biconnected", "cut_vertices": sorted(cuts)})
    try:
        h, _ = skeleton(g)
    except GraphError as exc:
        return ConvexityClass(NOT_CONVEX, {"reason": f"smoothing failed: {exc}"})
    if not is_internally_triconnected(h):
        return ConvexityClass(NOT_CONVEX, {"reason": "skeleton not internally triconnected"})
    internal2 = sorted(v for v in g.vertices if g.degree(v) == 2 and g.is_internal(v))
    witness = {"skeleton_vertices": h.n, "internal_degree2": internal2}
    return ConvexityClass(CONVEX if internal2 else STRICT, witness)


def claim_checker(h: PlaneGraph) -> bool:
    """Brute-force check that ``h`` is simple, plane and internally triconnected."""
    return is_internally_triconnected_bruteforce(h)


def edges_of(adj: Adjacency) -> set[Edge]:
    return {edge_key(u, v) for u in adj for v in adj[u]}
