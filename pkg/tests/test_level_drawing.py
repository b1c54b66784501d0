import pytest
from conftest import named, triangle

from convexmorph.corpus import flat_fixtures, graph_from_drawing, k4me, prism
from convexmorph.errors import NonGenericDirection, NotHierarchicalSt, NotStrictlyConvexGraph
from convexmorph.geometry import (
    check_drawing,
    drawings_equal,
    generic_direction,
    make_drawing,
    projection,
)
from convexmorph.level_drawing import (
    Hierarchy,
    convex_level_drawing,
    flat_paths,
    hierarchy_from_drawing,
    is_hierarchical_st,
    lp_level_drawing,
    on_levels,
    select_flat_path,
    strictify,
)


def one_flat():
    """Square with an internal vertex on the diagonal 0-2, joined to 0, 1, 2."""
    d = make_drawing({0: (0, 0), 1: (4, 0), 2: (4, 4), 3: (0, 4), 4: (2, 2)})
    g = graph_from_drawing(d, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (1, 4)])
    return g, d


def two_flat():
    """Two internal vertices on the diagonal 0-2, both joined to 1."""
    d = make_drawing({0: (0, 0), 1: (4, 0), 2: (4, 4), 3: (0, 4), 4: (1, 1), 5: (3, 3)})
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2), (1, 4), (1, 5)]
    return graph_from_drawing(d, edges), d


def leveled(g, d):
    return hierarchy_from_drawing(g, d, generic_direction(d))


def test_hierarchy_level_counts():
    t = make_drawing({0: (0, 0), 1: (1, 0), 2: (0, 1)})
    assert len(leveled(triangle(), t).levels) == 3
    g, s, _ = named()["K4"]
    assert len(leveled(g, s).levels) == 4


def test_prism_levels_are_sorted_projections():
    g, s, _ = prism()
    h = leveled(g, s)
    proj = sorted(projection(s[v], h.direction) for v in g.vertices)
    assert list(h.levels) == proj and len(proj) == 6
    assert all(h.y(v) == projection(s[v], h.direction) for v in g.vertices)


def test_non_generic_direction_rejected():
    g, s, _ = prism()
    with pytest.raises(NonGenericDirection):
        hierarchy_from_drawing(g, s, (0, 1))  # edge 0-1 is horizontal


def test_st_faces():
    t = make_drawing({0: (0, 0), 1: (1, 0), 2: (0, 1)})
    assert is_hierarchical_st(triangle(), leveled(triangle(), t))
    g, s, _ = prism()
    assert is_hierarchical_st(g, leveled(g, s))
    c4 = graph_from_drawing(make_drawing({0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}),
                            [(0, 1), (1, 2), (2, 3), (3, 0)])
    zigzag = Hierarchy((1, 0), (0, 1), {0: 0, 1: 1, 2: 0, 3: 1})
    assert not is_hierarchical_st(c4, zigzag)


def test_convex_level_drawing_keeps_polygon():
    c4 = graph_from_drawing(make_drawing({0: (0, 0), 1: (2, 0), 2: (3, 2), 3: (0, 3)}),
                            [(0, 1), (1, 2), (2, 3), (3, 0)])
    d = make_drawing({0: (0, 0), 1: (2, 0), 2: (3, 2), 3: (0, 3)})
    assert drawings_equal(convex_level_drawing(c4, leveled(c4, d), d), d)
    g, s, _ = k4me()
    out = convex_level_drawing(g, leveled(g, s), s)
    assert drawings_equal(out, s)


def test_convex_level_drawing_prism_and_corpus(strict_corpus):
    for fx in [f for f in strict_corpus if f.graph.n <= 30]:
        h = leveled(fx.graph, fx.source)
        outer = {v: fx.source[v] for v in fx.graph.outer_vertices}
        out = convex_level_drawing(fx.graph, h, outer)
        assert check_drawing(fx.graph, out).is_convex, fx.name
        assert on_levels(out, h)
        assert all(out[v] == outer[v] for v in outer)


def test_convex_level_drawing_rejects_non_st():
    c4 = graph_from_drawing(make_drawing({0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}),
                            [(0, 1), (1, 2), (2, 3), (3, 0)])
    zigzag = Hierarchy((1, 0), (0, 1), {0: 0, 1: 1, 2: 0, 3: 1})
    with pytest.raises(NotHierarchicalSt):
        convex_level_drawing(c4, zigzag, make_drawing({0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}))


def test_lp_level_drawing_free_outer_is_strict():
    g, s, _ = prism()
    h = leveled(g, s)
    out = lp_level_drawing(g, h, None, mode="strict")
    assert check_drawing(g, out).is_strict and on_levels(out, h)


def test_strictify_fixed_point():
    g, s, _ = prism()
    h = leveled(g, s)
    assert drawings_equal(strictify(g, h, s), s)


def test_strictify_single_flat_vertex():
    g, d = one_flat()
    h = leveled(g, d)
    assert len(check_drawing(g, d).flat_corners) == 1
    out = strictify(g, h, d)
    assert check_drawing(g, out).is_strict and on_levels(out, h)
    assert all(out[v] == d[v] for v in g.vertices if v != 4)


def test_flat_paths_examples():
    g, s, _ = prism()
    assert flat_paths(g, leveled(g, s), s) == []
    g, d = one_flat()
    (ctx,) = flat_paths(g, leveled(g, d), d)
    assert ctx.interior == (4,)
    g, d = two_flat()
    (ctx,) = flat_paths(g, leveled(g, d), d)
    assert set(ctx.interior) == {4, 5}


def test_strictify_rejects_internal_degree_two():
    from convexmorph.corpus import subdiv

    g, s, _ = subdiv()
    with pytest.raises(NotStrictlyConvexGraph):
        strictify(g, leveled(g, s), s)


def test_strictify_on_flat_fixtures():
    for name, g, h, d in flat_fixtures(0):
        trace = []
        out = strictify(g, h, d, trace=trace)
        assert check_drawing(g, out).is_strict, name
        assert on_levels(out, h), name
        assert trace and all(c.flat_after < c.flat_before for c in trace), name
        assert all(c.coordinate_bits > 0 for c in trace), name
        moved = {v for v in g.vertices if out[v] != d[v]}
        assert moved <= {v for c in trace for v in c.interior}, name


def test_selected_flat_path_has_no_nested_path_on_its_far_side():
    for name, g, h, d in flat_fixtures(0):
        contexts = flat_paths(g, h, d)
        chosen = select_flat_path(contexts)
        region = chosen.region_right if chosen.side == "left" else chosen.region_left
        for other in contexts:
            if other is chosen or other.side != chosen.side:
                continue
            assert not set(other.interior) <= region, name
