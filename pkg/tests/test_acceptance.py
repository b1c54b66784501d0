"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are collected in ``RESULTS`` and repeated in the terminal summary
(see ``conftest.py``), so they show up without ``-s``.
"""

from __future__ import annotations

import random
import time

import pytest
from gmpy2 import mpq

from convexmorph.certify import certify_morph
from convexmorph.connectivity import (
    is_biconnected,
    is_triconnected,
    is_triconnected_bruteforce,
    separation_pairs,
    separation_pairs_bruteforce,
)
from convexmorph.corpus import convex_polygon, cycle_graph, flat_fixtures
from convexmorph.decomposition import claim_check, decompose, replay
from convexmorph.errors import DegenerateEdge, WouldDisconnect
from convexmorph.geometry import (
    check_drawing,
    cross,
    drawings_equal,
    interpolate,
    make_drawing,
    projection,
    sub,
)
from convexmorph.graph_core import edge_key, remove_subgraph
from convexmorph.level_drawing import on_levels, strictify
from convexmorph.morph_engine import (
    convex_step_bound,
    morph_convex,
    morph_cycle,
    morph_strictly_convex,
    strict_step_bound,
)

RESULTS: list[str] = []
DENSE_SAMPLES = 1000


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)


class Run:
    """A morph together with the data the criteria check it against."""

    def __init__(self, name, graph, source, target, morph, mode, bound, seconds):
        self.name = name
        self.graph = graph
        self.source = source
        self.target = target
        self.morph = morph
        self.mode = mode
        self.bound = bound
        self.seconds = seconds


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def strict_runs(strict_corpus):
    runs = []
    for fx in strict_corpus:
        m, sec = _timed(morph_strictly_convex, fx.graph, fx.source, fx.target)
        runs.append(Run(fx.name, fx.graph, fx.source, fx.target, m, "strict",
                        strict_step_bound(fx.graph), sec))
    return runs


@pytest.fixture(scope="module")
def cycle_runs():
    rng = random.Random(2024)
    runs = []
    for i in range(20):
        k = 3 + i % 10
        g = cycle_graph(k)
        s = make_drawing(dict(enumerate(convex_polygon(k, rng))))
        t = make_drawing(dict(enumerate(convex_polygon(k, rng))))
        m, sec = _timed(morph_cycle, g, s, t)
        runs.append(Run(f"C{k}#{i}", g, s, t, m, "strict", 2 * k + 2, sec))
    return runs


@pytest.fixture(scope="module")
def convex_runs(convex_corpus):
    runs = []
    for fx in convex_corpus:
        m, sec = _timed(morph_convex, fx.graph, fx.source, fx.target)
        runs.append(Run(fx.name, fx.graph, fx.source, fx.target, m, "convex",
                        convex_step_bound(fx.graph), sec))
    return runs


@pytest.fixture(scope="module")
def all_runs(strict_runs, cycle_runs, convex_runs):
    return strict_runs + cycle_runs + convex_runs


def test_criterion_01_step_bound(strict_runs):
    big = max(r.graph.n for r in strict_runs)
    over = [r.name for r in strict_runs if r.morph.steps > r.bound]
    seconds = sum(r.seconds for r in strict_runs)
    ok = len(strict_runs) >= 30 and big <= 60 and not over and seconds < 60
    report(1, ok, f"{len(strict_runs)} strict pairs, n <= {big}, over 2n+2m: {over}, {seconds:.1f}s")
    assert ok


def test_criterion_02_cycles(cycle_runs):
    over = [r.name for r in cycle_runs if r.morph.steps > r.bound]
    bad = [r.name for r in cycle_runs if not r.morph.certify("strict").passed]
    seconds = sum(r.seconds for r in cycle_runs)
    ok = len(cycle_runs) == 20 and not over and not bad and seconds < 10
    report(2, ok, f"20 cycle pairs, over 2n+2: {over}, uncertified: {bad}, {seconds:.2f}s")
    assert ok


def _sampled_failures(run) -> int:
    missed = 0
    for a, b in zip(run.morph.frames, run.morph.frames[1:]):
        for k in range(DENSE_SAMPLES + 1):
            try:
                good = check_drawing(run.graph, interpolate(a, b, mpq(k, DENSE_SAMPLES))).passes(run.mode)
            except DegenerateEdge:
                good = False
            if not good:
                missed += 1
    return missed


def test_criterion_03_per_instant_convexity(all_runs):
    failing = []
    steps = 0
    for r in all_runs:
        rep = certify_morph(r.graph, r.morph.frames, r.mode)
        steps += rep.step_count
        failing += [(r.name, i) for i in rep.failing_steps]
    rng = random.Random(3)
    chosen = rng.sample([r for r in all_runs if r.graph.n <= 20], 5)
    missed = {r.name: _sampled_failures(r) for r in chosen}
    ok = not failing and not any(missed.values())
    report(3, ok, f"{steps} steps certified, failures {failing}; "
                  f"dense sampling on {sorted(missed)} found {sum(missed.values())} violations")
    assert ok


def test_criterion_04_unidirectional(all_runs):
    bad = []
    for r in all_runs:
        for i, (a, b) in enumerate(zip(r.morph.frames, r.morph.frames[1:])):
            moves = [sub(b[v], a[v]) for v in r.graph.vertices]
            moves = [d for d in moves if d != (0, 0)]
            if any(cross(p, q) != 0 for p in moves for q in moves):
                bad.append((r.name, i))
    ok = not bad
    report(4, ok, f"non-parallel steps: {bad}")
    assert ok


def test_criterion_05_strictify():
    instances = flat_fixtures(0)
    bad = []
    for name, g, h, d in instances:
        trace = []
        out = strictify(g, h, d, trace=trace)
        decreasing = bool(trace) and all(c.flat_after < c.flat_before for c in trace)
        strict = check_drawing(g, out).is_strict
        same_levels = all(projection(out[v], h.direction) == projection(d[v], h.direction) for v in g.vertices)
        if not (strict and on_levels(out, h) and same_levels and decreasing and trace[-1].flat_after == 0):
            bad.append(name)
    ok = len(instances) >= 20 and not bad
    report(5, ok, f"{len(instances)} flat-path instances, failures: {bad}")
    assert ok


def test_criterion_06_decomposition(corpus):
    bad = []
    for fx in corpus:
        g = fx.graph
        steps = decompose(g)
        outer = {edge_key(a, b) for a, b in g.outer_face.darts}
        last = steps[-1].graph
        if not all(claim_check(s.smoothed, brute=True) for s in steps):
            bad.append((fx.name, "claim"))
        if not (last.is_cycle() and set(last.edges) == outer):
            bad.append((fx.name, "last"))
        if replay(steps, g) != g:
            bad.append((fx.name, "replay"))
    ok = not bad
    report(6, ok, f"{len(corpus)} fixtures decomposed, failures: {bad}")
    assert ok


def test_criterion_07_connectivity_oracles(corpus):
    graphs = [fx.graph for fx in corpus if fx.graph.n <= 7]
    for g in list(graphs):
        for e in sorted(g.edges):
            try:
                graphs.append(remove_subgraph(g, edges=[e]))
            except WouldDisconnect:
                pass
    bad = []
    for g in graphs:
        if g.n >= 4 and is_triconnected(g) != is_triconnected_bruteforce(g):
            bad.append(("triconnected", sorted(g.edges)))
        if is_biconnected(g):
            fast = [p.key() for p in separation_pairs(g)]
            slow = [p.key() for p in separation_pairs_bruteforce(g)]
            if fast != slow:
                bad.append(("pairs", sorted(g.edges)))
    ok = not bad
    report(7, ok, f"{len(graphs)} graphs with <= 7 vertices, disagreements: {len(bad)}")
    assert ok


def test_criterion_08_endpoints(strict_runs, cycle_runs):
    bad = [
        r.name for r in strict_runs + cycle_runs
        if not (drawings_equal(r.morph.frames[0], r.source) and drawings_equal(r.morph.frames[-1], r.target))
    ]
    ok = not bad
    report(8, ok, f"{len(strict_runs) + len(cycle_runs)} morphs, endpoint mismatches: {bad}")
    assert ok


def _corrupt(run, rng):
    frames = [dict(f) for f in run.morph.frames]
    i = rng.randrange(1, len(frames) - 1) if len(frames) > 2 else rng.randrange(len(frames))
    g = run.graph
    v = rng.choice([v for v in g.vertices if g.is_internal(v)] or g.vertices)
    w = rng.choice(sorted(g.neighbors(v)))
    # reflect v through a neighbour: v crosses the faces around w
    frames[i][v] = (2 * frames[i][w][0] - frames[i][v][0], 2 * frames[i][w][1] - frames[i][v][1])
    return frames, i, v


def test_criterion_09_mutations(strict_runs, convex_runs):
    rng = random.Random(9)
    pool = [r for r in strict_runs + convex_runs if r.morph.steps >= 2]
    missed = []
    for r in rng.sample(pool, 10):
        frames, i, v = _corrupt(r, rng)
        rep = certify_morph(r.graph, frames, r.mode)
        if not rep.failing_steps:
            missed.append((r.name, i, v))
    ok = not missed
    report(9, ok, f"10 corrupted morphs, undetected: {missed}")
    assert ok


def test_criterion_10_convex_wrapper(convex_runs):
    nonstrict = [
        r for r in convex_runs
        if not (check_drawing(r.graph, r.source).is_strict and check_drawing(r.graph, r.target).is_strict)
    ]
    bad = []
    for r in nonstrict:
        rep = r.morph.certify("convex", r.bound, r.source, r.target)
        if not rep.passed:
            bad.append(r.name)
    worst = max((r.morph.steps / r.graph.n for r in nonstrict), default=0)
    ok = len(nonstrict) >= 10 and not bad
    report(10, ok, f"{len(nonstrict)} non-strict convex pairs, c = 8, max steps/n = {worst:.2f}, "
                   f"failures: {bad}")
    assert ok
