"""
Convex drawings with flat angles
================================

A 4-cycle whose chord is subdivided once.  The subdivision vertex has
degree two, so every convex drawing puts it on the straight segment of the
chord and no drawing is strictly convex.
"""

from convexmorph import check_drawing, classify_convexity, convex_step_bound, morph_convex
from convexmorph.corpus import subdiv

graph, source, target = subdiv()
print(classify_convexity(graph).tag)
print(check_drawing(graph, source).to_dict())

# %%
# The convex morph redraws each side once so that the graph with its
# degree-2 chains smoothed becomes strictly convex, moves the chain vertex
# to the ratio it has in the target, then runs the strict morph with the
# chain carried along.
morph = morph_convex(graph, source, target)


def ratio(drawing, a=0, b=2, w=4):
    (ax, ay), (bx, by), (wx, wy) = drawing[a], drawing[b], drawing[w]
    ex, ey = bx - ax, by - ay
    return ((wx - ax) * ex + (wy - ay) * ey) / (ex * ex + ey * ey)


for i, frame in enumerate(morph.frames):
    print(f"frame {i}: vertex 4 at {ratio(frame)} of the chord")

# %%
# In convex mode a corner that is straight may stay straight, or bend
# towards the face, but never reflex.
report = morph.certify("convex", convex_step_bound(graph), source, target)
print(f"{report.step_count} steps, bound {report.bound}, passed: {report.passed}")
