import pytest
from conftest import named, triangle

from convexmorph.connectivity import is_triconnected_bruteforce, separation_pairs
from convexmorph.corpus import graph_from_drawing, grid, prism, wheel
from convexmorph.decomposition import (
    PathRemoval,
    TripodRemoval,
    apply_removal,
    claim_check,
    decompose,
    extend_by_path,
    find_tripod,
    replay,
    split_off_pocket,
    tripod_candidates,
)
from convexmorph.errors import NoInternalVertex, NoTwoComponentPair, NotConvexInput
from convexmorph.geometry import make_drawing
from convexmorph.graph_core import build_plane_graph, edge_key, remove_subgraph, smooth


def two_k4_pocket():
    """Two K4 halves glued at the outer vertices 0 and 1 (no edge 0-1)."""
    d = make_drawing({0: (0, 0), 1: (4, 0), 2: (2, 3), 3: (2, 1), 4: (2, -3), 5: (2, -1)})
    edges = [(0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (0, 5), (1, 5), (4, 5)]
    return graph_from_drawing(d, edges)


def test_triangle_is_a_single_step():
    steps = decompose(triangle())
    assert len(steps) == 1 and steps[0].removal is None


def test_k4_removes_its_center_as_a_tripod():
    steps = decompose(named()["K4"][0])
    assert len(steps) == 2
    assert steps[0].removal == TripodRemoval(3, ((3, 0), (3, 1), (3, 2)))
    assert steps[1].graph.is_cycle()


def test_prism_sequence():
    steps = decompose(prism()[0])
    assert [s.removal for s in steps] == [
        PathRemoval((4, 5)),
        TripodRemoval(3, ((3, 0), (3, 4, 1), (3, 5, 2))),
        None,
    ]


def test_not_convex_input_rejected():
    p3 = build_plane_graph([0, 1, 2], {0: [1], 1: [0, 2], 2: [1]}, (0, 1))
    with pytest.raises(NotConvexInput):
        decompose(p3)


def test_find_tripod_examples():
    assert find_tripod(named()["K4"][0]).paths == ((3, 0), (3, 1), (3, 2))
    w = wheel(4)
    assert len(tripod_candidates(w)) == 4
    assert find_tripod(w).center == 4
    h, _ = smooth(remove_subgraph(prism()[0], edges=[(4, 5)]), "all")
    assert find_tripod(h).center == 3
    with pytest.raises(NoInternalVertex):
        find_tripod(triangle())


def test_extend_by_path_case_a():
    g = prism()[0]
    h, _ = smooth(g, "all")
    current = set(g.edges) - {edge_key(4, 5)}
    assert extend_by_path(current, g, h) == PathRemoval((4, 5))


def test_extend_by_path_case_b_starts_inside():
    g = grid(3, 3)
    h, _ = smooth(g, "all")
    current = {edge_key(a, b) for a, b in g.outer_face.darts} | {edge_key(3, 4), edge_key(4, 5)}
    step = extend_by_path(current, g, h)
    inner = set(h.vertices) - set(h.outer_vertices)
    assert step.path[0] in inner or step.path[-1] in inner


def test_split_off_pocket_two_k4s():
    g = two_k4_pocket()
    d, m, q = split_off_pocket(g)
    assert m.n == 4 and is_triconnected_bruteforce(m)
    assert q[0] in (0, 1) and q[-1] in (0, 1)
    assert set(d.vertices) == set(m.vertices) | set(q)
    with pytest.raises(NoTwoComponentPair):
        split_off_pocket(prism()[0])


def test_three_component_pair_routes_to_internal_edge():
    g = named()["K4mE"][0]
    assert len(separation_pairs(g)[0].components) == 3
    assert decompose(g)[0].removal == PathRemoval((0, 2))


def test_corpus_decompositions(corpus):
    for fx in corpus:
        g = fx.graph
        steps = decompose(g)
        assert steps[0].graph == g
        assert steps[-1].graph.is_cycle()
        assert set(steps[-1].graph.vertices) == set(g.outer_vertices)
        assert len(steps) - 1 <= len(g.edges)
        outer = {edge_key(a, b) for a, b in g.outer_face.darts}
        for a, b in zip(steps, steps[1:]):
            assert apply_removal(a.graph, a.removal) == b.graph
            assert set(b.graph.edges) < set(a.graph.edges)
            assert outer <= set(b.graph.edges)
            if isinstance(a.removal, TripodRemoval):
                assert a.graph.degree(a.removal.center) == 3
                assert a.graph.is_internal(a.removal.center)
        assert replay(steps, g) == g


def test_every_step_passes_claim_checker(corpus):
    for fx in corpus:
        if fx.graph.n > 25:
            continue
        for step in decompose(fx.graph):
            assert claim_check(step.graph, brute=True), fx.name
