"""Exact certificates that linear morphing steps stay (strictly) convex.

Under a linear morph every vertex moves at constant speed, so the turn at a
face corner is a polynomial of degree at most two in the time ``t``.  Its
sign on ``[0, 1]`` is decided exactly from its values at the endpoints, the
apex ``-b / 2a`` and the discriminant.  A step whose corners all keep the
right sign keeps every face convex at every instant, which also rules out
crossings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from gmpy2 import mpq

from .errors import GraphMismatch
from .geometry import check_drawing, cross, drawings_equal, face_walk
from .graph_core import PlaneGraph

ZERO = mpq(0)


def corner_polynomial(a0, a1, b0, b1, c0, c1) -> tuple[mpq, mpq, mpq]:
    """Coefficients ``(a, b, c)`` of ``q(t) = a t^2 + b t + c``.

    ``q(t)`` is the turn ``(B - A) x (C - B)`` when ``A, B, C`` move linearly
    from ``*0`` to ``*1`` as ``t`` runs over ``[0, 1]``.
    """
    u0 = (b0[0] - a0[0], b0[1] - a0[1])
    v0 = (c0[0] - b0[0], c0[1] - b0[1])
    du = (b1[0] - a1[0] - u0[0], b1[1] - a1[1] - u0[1])
    dv = (c1[0] - b1[0] - v0[0], c1[1] - b1[1] - v0[1])
    return cross(du, dv), cross(u0, dv) + cross(du, v0), cross(u0, v0)


def _dot_polynomial(a0, a1, b0, b1, c0, c1) -> tuple[mpq, mpq, mpq]:
    u0 = (b0[0] - a0[0], b0[1] - a0[1])
    v0 = (c0[0] - b0[0], c0[1] - b0[1])
    du = (b1[0] - a1[0] - u0[0], b1[1] - a1[1] - u0[1])
    dv = (c1[0] - b1[0] - v0[0], c1[1] - b1[1] - v0[1])
    dot = lambda p, q: p[0] * q[0] + p[1] * q[1]  # noqa: E731
    return dot(du, dv), dot(u0, dv) + dot(du, v0), dot(u0, v0)


def evaluate(poly, t) -> mpq:
    a, b, c = poly
    return (a * t + b) * t + c


def _interior_apex(poly):
    a, b, _ = poly
    if a > 0:
        t = -b / (2 * a)
        if 0 < t < 1:
            return t
    return None


def positive_on_closed(poly) -> bool:
    """``q(t) > 0`` for every ``t`` in ``[0, 1]``."""
    a, b, c = poly
    if c <= 0 or a + b + c <= 0:
        return False
    return _interior_apex(poly) is None or b * b - 4 * a * c < 0


def nonnegative_on_closed(poly) -> bool:
    a, b, c = poly
    if c < 0 or a + b + c < 0:
        return False
    return _interior_apex(poly) is None or b * b - 4 * a * c <= 0


def positive_on_open(poly) -> bool:
    """``q(t) > 0`` for every ``t`` in ``(0, 1)``."""
    a, b, c = poly
    if c < 0 or a + b + c < 0:
        return False
    if a == 0 and b == 0 and c == 0:
        return False
    if _interior_apex(poly) is not None:
        return b * b - 4 * a * c < 0
    # concave, linear or monotone on the interval: minimum at an endpoint
    return True


def nonpositive_set(poly) -> list[tuple[float, float]]:
    """Approximate sub-intervals of ``[0, 1]`` where ``q(t) <= 0`` (reporting)."""
    a, b, c = (float(x) for x in poly)
    q = lambda t: (a * t + b) * t + c  # noqa: E731
    pts = [0.0, 1.0]
    if a == 0:
        if b != 0:
            pts.append(-c / b)
    else:
        disc = b * b - 4 * a * c
        if disc >= 0:
            r = math.sqrt(disc)
            pts += [(-b - r) / (2 * a), (-b + r) / (2 * a)]
    pts = sorted({min(1.0, max(0.0, p)) for p in pts})
    pieces = [(p, p) for p in pts if q(p) <= 1e-12 * (abs(a) + abs(b) + abs(c))]
    pieces += [(lo, hi) for lo, hi in zip(pts, pts[1:]) if q((lo + hi) / 2) <= 0]
    pieces.sort()
    out: list[list[float]] = []
    for lo, hi in pieces:
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


@dataclass
class CornerRecord:
    """Certificate of one face corner over one step."""

    face: int
    vertex: int
    coefficients: tuple
    verdict: str  # "positive", "flat", "fail"
    interval: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "face": self.face,
            "vertex": self.vertex,
            "coefficients": [str(x) for x in self.coefficients],
            "verdict": self.verdict,
            "interval": list(self.interval) if self.interval else None,
        }


@dataclass
class StepCertificate:
    """Exact evidence for one linear morphing step.

    Attributes:
        mode: ``"strict"`` or ``"convex"``.
        passed: Every corner keeps the required sign on ``[0, 1]``.
        corners: Per-corner polynomial and verdict.
        unidirectional: All nonzero displacements are parallel.
        direction: A common displacement direction, or ``None`` if nothing moves.
    """

    mode: str
    passed: bool
    corners: list = field(default_factory=list)
    unidirectional: bool = True
    direction: tuple | None = None

    @property
    def failures(self) -> list:
        return [c for c in self.corners if c.verdict == "fail"]

    def to_dict(self, full: bool = False) -> dict:
        corners = self.corners if full else self.failures
        return {
            "mode": self.mode,
            "passed": self.passed,
            "unidirectional": self.unidirectional,
            "direction": [str(x) for x in self.direction] if self.direction else None,
            "corner_count": len(self.corners),
            "corners": [c.to_dict() for c in corners],
        }


def displacement_direction(g1: Mapping, g2: Mapping) -> tuple[bool, tuple | None]:
    """Whether all nonzero displacements are parallel, with one of them."""
    ref = None
    for v in g1:
        dv = (g2[v][0] - g1[v][0], g2[v][1] - g1[v][1])
        if dv[0] == 0 and dv[1] == 0:
            continue
        if ref is None:
            ref = dv
        elif cross(ref, dv) != 0:
            return False, ref
    return True, ref


def _judge(poly, dot, mode) -> str:
    if positive_on_closed(poly):
        return "positive"
    if mode == "strict":
        return "fail"
    a, b, c = poly
    q0, q1 = c, a + b + c
    d0, d1 = dot[2], sum(dot)
    if q0 == 0 and d0 <= 0 or q1 == 0 and d1 <= 0:
        return "fail"
    if q0 == 0 and q1 == 0:
        if a == 0 and b == 0:
            return "flat" if positive_on_closed(dot) else "fail"
        if not nonnegative_on_closed(poly):
            return "fail"
        apex = _interior_apex(poly)
        if apex is not None and evaluate(poly, apex) == 0 and evaluate(dot, apex) <= 0:
            return "fail"
        return "flat"
    return "flat" if positive_on_open(poly) else "fail"


def certify_step(
    graph: PlaneGraph, g1: Mapping, g2: Mapping, mode: str = "strict", faces=None
) -> StepCertificate:
    """Certify the linear morph from ``g1`` to ``g2``.

    In strict mode every corner must turn left throughout.  In convex mode a
    corner straight at both ends may stay straight (its edges keeping their
    direction) or bend left in between; a corner straight at one end must
    turn left strictly inside the interval.  Outer corners are read on the
    reversed boundary, so the same sign rule applies.

    Raises:
        GraphMismatch: The drawings do not cover the graph.
    """
    vs = set(graph.vertices)
    if not vs <= set(g1) or not vs <= set(g2):
        raise GraphMismatch("drawings do not cover the graph")
    uni, direction = displacement_direction({v: g1[v] for v in vs}, g2)
    cert = StepCertificate(mode, True, [], uni, direction)
    indices = range(len(graph.faces)) if faces is None else faces
    for fi in indices:
        walk = face_walk(graph, fi)
        k = len(walk)
        for i in range(k):
            a, b, c = walk[i - 1], walk[i], walk[(i + 1) % k]
            args = (g1[a], g2[a], g1[b], g2[b], g1[c], g2[c])
            poly = corner_polynomial(*args)
            verdict = _judge(poly, _dot_polynomial(*args), mode)
            rec = CornerRecord(fi, b, poly, verdict)
            if verdict == "fail":
                cert.passed = False
                bad = nonpositive_set(poly)
                rec.interval = (bad[0][0], bad[-1][1]) if bad else (0.0, 1.0)
            cert.corners.append(rec)
    return cert


@dataclass
class Report:
    """Outcome of :func:`certify_morph`."""

    passed: bool
    steps: list
    step_count: int
    bound: int | None
    endpoints_ok: bool
    all_unidirectional: bool
    frames_ok: bool

    @property
    def failing_steps(self) -> list[int]:
        return [i for i, c in enumerate(self.steps) if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "step_count": self.step_count,
            "bound": self.bound,
            "endpoints_ok": self.endpoints_ok,
            "all_unidirectional": self.all_unidirectional,
            "frames_ok": self.frames_ok,
            "failing_steps": self.failing_steps,
            "steps": [c.to_dict() for c in self.steps],
        }


def certify_morph(
    graph: PlaneGraph,
    frames: Sequence[Mapping],
    mode: str = "strict",
    bound: int | None = None,
    source: Mapping | None = None,
    target: Mapping | None = None,
) -> Report:
    """Certify every step of a morph and its global contracts.

    Args:
        graph: The plane graph.
        frames: Drawings ``Gamma_0 .. Gamma_k``.
        mode: ``"strict"`` or ``"convex"``.
        bound: Maximum allowed number of steps.
        source: Expected first frame.
        target: Expected last frame.
    """
    steps = [certify_step(graph, a, b, mode) for a, b in zip(frames, frames[1:])]
    endpoints = (source is None or drawings_equal(frames[0], source)) and (
        target is None or drawings_equal(frames[-1], target)
    )
    uni = all(c.unidirectional for c in steps)
    frames_ok = all(check_drawing(graph, f).passes(mode) for f in frames)
    count = len(frames) - 1
    ok = (
        all(c.passed for c in steps)
        and endpoints
        and uni
        and frames_ok
        and (bound is None or count <= bound)
    )
    return Report(ok, steps, count, bound, endpoints, uni, frames_ok)
