import random

import pytest
from conftest import named
from gmpy2 import mpq

from convexmorph.corpus import cycle_graph, convex_polygon, graph_from_drawing, strict_fixtures
from convexmorph.errors import (
    NotConvexGraph,
    NotEquivalent,
    NotStrictlyConvex,
    ValidationExhausted,
)
from convexmorph.geometry import cross, from_frame, generic_direction, make_drawing, sub, to_frame
from convexmorph.level_drawing import hierarchy_from_drawing
from convexmorph.morph_engine import (
    InsertionCoefficients,
    choose_epsilon_xi,
    convex_step_bound,
    morph_convex,
    morph_cycle,
    morph_strictly_convex,
    strict_step_bound,
    unidirectional_step,
)


def _ring(k, rng):
    return make_drawing(dict(enumerate(convex_polygon(k, rng))))


def test_k4_single_step():
    g, s, t = named()["K4"]
    m = morph_strictly_convex(g, s, t)
    assert m.steps == 1 <= 11 <= strict_step_bound(g)
    assert m.certify("strict", strict_step_bound(g), s, t).passed


def test_prism():
    g, s, t = named()["PRISM"]
    m = morph_strictly_convex(g, s, t)
    rep = m.certify("strict", strict_step_bound(g), s, t)
    assert rep.passed and rep.all_unidirectional
    assert m.steps <= strict_step_bound(g)


def test_prism_debug_profile(monkeypatch):
    monkeypatch.setenv("CONVEXMORPH_VALIDATE", "debug")
    g, s, t = named()["PRISM"]
    assert morph_strictly_convex(g, s, t).certify("strict", None, s, t).passed


@pytest.mark.parametrize("k", [3, 4, 5, 7, 10, 12])
def test_cycles(k):
    rng = random.Random(k)
    g = cycle_graph(k)
    for _ in range(3):
        s, t = _ring(k, rng), _ring(k, rng)
        m = morph_cycle(g, s, t)
        assert m.steps <= 2 * k + 2
        assert m.certify("strict", 2 * k + 2, s, t).passed


def test_identical_drawings():
    g, s, _ = named()["PRISM"]
    m = morph_strictly_convex(g, s, s)
    assert m.steps == 1 and m.step_directions == [None]


def test_small_strict_fixtures_other_seeds():
    for seed in (1, 2):
        for fx in strict_fixtures(seed, sizes=(8, 12)):
            bound = strict_step_bound(fx.graph)
            m = morph_strictly_convex(fx.graph, fx.source, fx.target)
            assert m.certify("strict", bound, fx.source, fx.target).passed, (seed, fx.name)


def test_subdiv_convex_morph_keeps_chain_straight():
    g, s, t = named()["SUBDIV"]
    m = morph_convex(g, s, t)
    assert m.certify("convex", convex_step_bound(g), s, t).passed
    ratios = []
    for f in m.frames:
        a, b, w = f[0], f[2], f[4]
        assert cross(sub(b, a), sub(w, a)) == 0
        e, q = sub(b, a), sub(w, a)
        ratios.append((q[0] * e[0] + q[1] * e[1]) / (e[0] * e[0] + e[1] * e[1]))
    assert all(0 < r < 1 for r in ratios)
    # after the side redraws and one alignment step the ratio is frozen
    changes = sum(1 for r1, r2 in zip(ratios, ratios[1:]) if r1 != r2)
    assert changes <= 3
    assert ratios[-2] == ratios[-1] or m.steps <= 3


def test_convex_morph_of_strict_pair_delegates():
    g, s, t = named()["K4"]
    assert morph_convex(g, s, t).steps == 1


def test_not_convex_graph_rejected():
    d = make_drawing({0: (0, 0), 1: (4, 0), 2: (0, 4), 3: (1, 1)})
    g = graph_from_drawing(d, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 2)])
    with pytest.raises(NotConvexGraph):
        morph_convex(g, d, d)


def test_strict_morph_rejects_convex_input():
    g, s, t = named()["SUBDIV"]
    with pytest.raises(NotStrictlyConvex):
        morph_strictly_convex(g, s, t)


def test_unidirectional_step_rejects_reordered_levels():
    g, s, _ = named()["K4"]
    d = generic_direction(s)
    h = hierarchy_from_drawing(g, s, d)
    assert unidirectional_step(g, h, s, s).certificate.passed
    # mirror across the level direction: same levels, reversed order
    mirrored = {v: from_frame((-x, y), d) for v, (x, y) in ((v, to_frame(p, d)) for v, p in s.items())}
    with pytest.raises(NotEquivalent):
        unidirectional_step(g, h, s, mirrored)


def test_choose_epsilon_xi():
    trace = []
    assert choose_epsilon_xi(lambda x: x <= mpq(1, 10), trace=trace) == mpq(1, 16)
    assert [v for v, _ in trace] == [mpq(1, 2), mpq(1, 4), mpq(1, 8), mpq(1, 16)]
    with pytest.raises(ValidationExhausted):
        choose_epsilon_xi(lambda x: False, max_halvings=5)


def test_insertion_coefficients():
    c = InsertionCoefficients(3, (0, 1, 2), (mpq(1, 2), mpq(1, 4), mpq(1, 4)))
    d = make_drawing({0: (0, 0), 1: (4, 0), 2: (0, 4), 3: (1, 1)})
    assert c.position(d) == (1, 1) and c.holds_in(d)
    with pytest.raises(ValueError):
        InsertionCoefficients(3, (0, 1), (mpq(1, 2), mpq(1, 3)))
