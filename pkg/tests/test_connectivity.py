import pytest
from conftest import named, to_nx

import networkx as nx

from convexmorph.connectivity import (
    CONVEX,
    NOT_CONVEX,
    STRICT,
    classify_convexity,
    is_biconnected,
    is_internally_triconnected,
    is_internally_triconnected_bruteforce,
    is_triconnected,
    is_triconnected_bruteforce,
    separation_pairs,
    separation_pairs_bruteforce,
)
from convexmorph.corpus import graph_from_drawing, prism
from convexmorph.errors import TooSmall, WouldDisconnect
from convexmorph.geometry import check_drawing, make_drawing
from convexmorph.graph_core import build_plane_graph, edge_key, remove_subgraph


def bowtie():
    d = make_drawing({0: (0, 0), 1: (2, 0), 2: (1, 1), 3: (2, 2), 4: (0, 2)})
    return graph_from_drawing(d, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def diamond_inside():
    """Triangle 0,1,2 with 3 inside joined to 0 and 2 only."""
    d = make_drawing({0: (0, 0), 1: (4, 0), 2: (0, 4), 3: (1, 1)})
    return graph_from_drawing(d, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 2)])


def small_graphs(corpus):
    """Corpus graphs with at most seven vertices and their one-edge deletions."""
    out = [fx.graph for fx in corpus if fx.graph.n <= 7] + [bowtie(), diamond_inside()]
    more = []
    for g in out:
        for e in sorted(g.edges):
            try:
                more.append(remove_subgraph(g, edges=[e]))
            except WouldDisconnect:
                pass
    return out + more


def test_biconnectivity_examples():
    assert not is_biconnected(bowtie())
    assert is_biconnected(named()["K4"][0])
    assert is_biconnected(prism()[0])


def test_triconnectivity_examples():
    assert is_triconnected(named()["K4"][0])
    assert not is_triconnected(named()["K4mE"][0])
    assert is_triconnected(prism()[0])
    with pytest.raises(TooSmall):
        is_triconnected({0: {1, 2}, 1: {0, 2}, 2: {0, 1}})


def test_triconnectivity_matches_oracles(corpus):
    for g in small_graphs(corpus):
        if g.n < 4:
            continue
        fast = is_triconnected(g)
        assert fast == is_triconnected_bruteforce(g)
        assert fast == (nx.node_connectivity(to_nx(g)) >= 3)
        assert is_biconnected(g) == nx.is_biconnected(to_nx(g))


def test_separation_pairs_match_bruteforce(corpus):
    for g in small_graphs(corpus):
        if not is_biconnected(g):
            continue
        fast = [p.key() for p in separation_pairs(g)]
        slow = [p.key() for p in separation_pairs_bruteforce(g)]
        assert fast == slow


def test_separation_pairs_of_k4_and_k4me():
    assert separation_pairs(named()["K4"][0]) == []
    (sp,) = separation_pairs(named()["K4mE"][0])
    assert (sp.u, sp.v) == (0, 2)
    comps = sorted(sorted(c.vertices) for c in sp.components)
    assert comps == [[0, 1, 2], [0, 2], [0, 2, 3]]
    assert sum(c.is_edge for c in sp.components) == 1


def test_separation_pairs_of_subdiv():
    (sp,) = separation_pairs(named()["SUBDIV"][0])
    comps = sorted(sorted(c.vertices) for c in sp.components)
    assert comps == [[0, 1, 2], [0, 2, 3], [0, 2, 4]]


def test_split_components_of_internally_triconnected(corpus):
    for fx in corpus:
        g = fx.graph
        if g.n > 20 or not is_internally_triconnected(g):
            continue
        for sp in separation_pairs(g):
            assert 2 <= len(sp.components) <= 3
            if len(sp.components) == 3:
                edge = [c for c in sp.components if c.is_edge]
                assert len(edge) == 1
                assert g.is_internal_edge(sp.u, sp.v)


def test_internal_triconnectivity():
    assert is_internally_triconnected(named()["K4mE"][0])
    assert is_internally_triconnected(prism()[0])
    g = diamond_inside()
    assert is_internally_triconnected(g) == is_internally_triconnected_bruteforce(g) is False


def test_internal_triconnectivity_matches_bruteforce(corpus):
    for g in small_graphs(corpus):
        if is_biconnected(g):
            assert is_internally_triconnected(g) == is_internally_triconnected_bruteforce(g)


def test_classification_examples():
    assert classify_convexity(named()["SUBDIV"][0]).tag == CONVEX
    assert classify_convexity(prism()[0]).tag == STRICT
    p3 = build_plane_graph([0, 1, 2], {0: [1], 1: [0, 2], 2: [1]}, (0, 1))
    assert classify_convexity(p3).tag == NOT_CONVEX
    assert classify_convexity(bowtie()).tag == NOT_CONVEX


def test_classification_agrees_with_drawings(corpus):
    for fx in corpus:
        tag = classify_convexity(fx.graph).tag
        strict = check_drawing(fx.graph, fx.source).is_strict
        assert tag != NOT_CONVEX
        assert (tag == STRICT) == strict or (tag == STRICT and fx.kind == "convex"), fx.name


def test_strict_implies_convex_condition(corpus):
    for fx in corpus:
        c = classify_convexity(fx.graph)
        if c.tag == STRICT:
            assert c.witness["internal_degree2"] == []
        if c.tag == CONVEX:
            assert c.witness["internal_degree2"]
            assert all(edge_key(v, v) not in fx.graph.edges for v in c.witness["internal_degree2"])
