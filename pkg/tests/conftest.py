"""Shared fixtures: the deterministic corpus and small named graphs."""

from __future__ import annotations

import random

import networkx as nx
import pytest

from convexmorph.corpus import convex_fixtures, gen_corpus, k4, k4me, prism, strict_fixtures, subdiv
from convexmorph.geometry import make_drawing
from convexmorph.graph_core import PlaneGraph, build_plane_graph


@pytest.fixture(scope="session")
def corpus():
    return gen_corpus(0)


@pytest.fixture(scope="session")
def strict_corpus():
    return strict_fixtures(0)


@pytest.fixture(scope="session")
def convex_corpus():
    return convex_fixtures(0)


@pytest.fixture
def rng():
    return random.Random(1234)


def triangle() -> PlaneGraph:
    # clockwise rotations of the triangle 0 (0,0), 1 (1,0), 2 (0,1)
    return build_plane_graph([0, 1, 2], {0: [1, 2], 1: [2, 0], 2: [0, 1]}, [0, 2, 1])


def named():
    return {"K4": k4(), "K4mE": k4me(), "SUBDIV": subdiv(), "PRISM": prism()}


def to_nx(g: PlaneGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def nx_face_count(g: PlaneGraph) -> int:
    """Faces of the rotation system traced by networkx (independent oracle)."""
    emb = nx.PlanarEmbedding()
    for v, nbrs in g.rotation.items():
        ccw = list(reversed(nbrs))
        emb.add_half_edge(v, ccw[0])
        for prev, w in zip(ccw, ccw[1:]):
            emb.add_half_edge(v, w, cw=prev)
    emb.check_structure()
    seen = set()
    count = 0
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        emb.traverse_face(u, v, mark_half_edges=seen)
        count += 1
    return count


__all__ = ["make_drawing", "named", "nx_face_count", "to_nx", "triangle"]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
