from itertools import combinations

import pytest
from conftest import named, nx_face_count, to_nx, triangle

import networkx as nx

from convexmorph.corpus import prism
from convexmorph.errors import (
    BadOuterFace,
    Disconnected,
    NonPlanarRotation,
    NotSimple,
    SmoothingCreatesParallelEdge,
    UnknownElement,
    WouldDisconnect,
)
from convexmorph.graph_core import (
    build_plane_graph,
    chains,
    edge_key,
    remove_subgraph,
    smooth,
)


def test_triangle_has_two_faces_of_length_three():
    g = triangle()
    assert len(g.faces) == 2
    assert sorted(len(f) for f in g.faces) == [3, 3]


def test_k4_has_four_triangles_and_triangular_outer_face():
    g = named()["K4"][0]
    assert len(g.faces) == 4
    assert all(len(f) == 3 for f in g.faces)
    assert len(g.outer_face) == 3


def test_k4me_faces():
    g = named()["K4mE"][0]
    assert sorted(len(f) for f in g.faces) == [3, 3, 4]
    assert set(g.outer_face.boundary) == {0, 1, 2, 3}


def test_k5_rotation_is_rejected():
    rot = {v: [w for w in range(5) if w != v] for v in range(5)}
    with pytest.raises(NonPlanarRotation):
        build_plane_graph(range(5), rot, (0, 1))


def test_structural_errors():
    with pytest.raises(Disconnected):
        build_plane_graph(range(6), {0: [1, 2], 1: [2, 0], 2: [0, 1], 3: [4, 5], 4: [5, 3], 5: [3, 4]}, (0, 1))
    with pytest.raises((NotSimple, NonPlanarRotation)):
        build_plane_graph(range(2), {0: [1, 1], 1: [0, 0]}, (0, 1))
    with pytest.raises(BadOuterFace):
        build_plane_graph(range(3), {0: [1, 2], 1: [2, 0], 2: [0, 1]}, [0, 1, 5])


def test_euler_and_faces_agree_with_networkx(corpus):
    for fx in corpus:
        g = fx.graph
        assert g.n - len(g.edges) + len(g.faces) == 2
        assert len(g.faces) == nx_face_count(g), fx.name


def test_every_dart_in_exactly_one_face(corpus):
    for fx in corpus:
        darts = [d for f in fx.graph.faces for d in f.darts]
        assert len(darts) == len(set(darts)) == 2 * len(fx.graph.edges)


def test_biconnected_faces_are_simple_cycles(corpus):
    for fx in corpus:
        for f in fx.graph.faces:
            assert len(set(f.boundary)) == len(f.boundary)


def test_remove_center_of_k4_gives_triangle():
    g = named()["K4"][0]
    h = remove_subgraph(g, vertices=[3])
    assert h.n == 3 and len(h.faces) == 2


def test_remove_chord_merges_two_faces():
    g = named()["K4mE"][0]
    h = remove_subgraph(g, edges=[(0, 2)])
    assert h.is_cycle() and len(h.faces) == 2


def test_prism_minus_inner_edge_degrees():
    g = prism()[0]
    h = remove_subgraph(g, edges=[(4, 5)])
    assert h.n == 6
    assert h.degree(4) == 2 and h.degree(5) == 2


def test_removal_errors():
    g = named()["K4"][0]
    with pytest.raises(UnknownElement):
        remove_subgraph(g, edges=[(0, 9)])
    with pytest.raises(WouldDisconnect):
        remove_subgraph(triangle(), edges=[(0, 1), (1, 2)])


def test_remove_edge_merges_faces_small_graphs(corpus):
    """Removing an edge merges exactly its two faces; all others survive."""
    for fx in corpus:
        g = fx.graph
        if g.n > 7:
            continue
        for u, v in sorted(g.edges):
            try:
                h = remove_subgraph(g, edges=[(u, v)])
            except WouldDisconnect:
                continue
            f1, f2 = g.face_of_dart(u, v), g.face_of_dart(v, u)
            kept = {tuple(f.boundary) for f in g.faces if f not in (f1, f2)}
            canon = lambda b: min(b[i:] + b[:i] for i in range(len(b)))  # noqa: E731
            assert {canon(b) for b in kept} <= {canon(f.boundary) for f in h.faces}
            assert len(h.faces) == len(g.faces) - 1
            assert nx.is_connected(to_nx(h))


def test_smooth_subdiv_internal():
    g = named()["SUBDIV"][0]
    h, mp = smooth(g, "internal")
    assert h == named()["K4mE"][0]
    assert mp.path(0, 2) == (0, 4, 2)


def test_smooth_prism_is_identity():
    g = prism()[0]
    h, mp = smooth(g, "all")
    assert h == g
    assert all(len(p) == 2 for p in mp.edge_to_path.values())


def test_smooth_parallel_edge_detected():
    g = remove_subgraph(prism()[0], edges=[(0, 3)])
    with pytest.raises(SmoothingCreatesParallelEdge):
        smooth(g, [3])


def test_smooth_round_trip(convex_corpus):
    for fx in convex_corpus:
        h, mp = smooth(fx.graph, "internal")
        assert mp.subdivide(h) == fx.graph, fx.name


def test_chains_cover_edges(corpus):
    for fx in corpus:
        if fx.graph.is_cycle():
            continue
        es = [edge_key(p[i], p[i + 1]) for p in chains(fx.graph) for i in range(len(p) - 1)]
        assert sorted(es) == sorted(fx.graph.edges)


def test_no_pair_of_edges_crosses_in_corpus_drawings(corpus):
    """Planarity of the source drawings, checked by segment intersection."""
    from convexmorph.geometry import orientation

    for fx in corpus:
        if fx.graph.n > 20:
            continue
        d = fx.source
        for (a, b), (c, e) in combinations(sorted(fx.graph.edges), 2):
            if {a, b} & {c, e}:
                continue
            o1, o2 = orientation(d[a], d[b], d[c]), orientation(d[a], d[b], d[e])
            o3, o4 = orientation(d[c], d[e], d[a]), orientation(d[c], d[e], d[b])
            assert not (o1 * o2 < 0 and o3 * o4 < 0), (fx.name, a, b, c, e)
