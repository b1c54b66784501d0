"""
What a failing certificate looks like
=====================================

Pulling the apex of a triangle straight down through its base flips the
triangle.  The corner polynomials show exactly when it degenerates.
"""

from convexmorph import certify_step, make_drawing
from convexmorph.graph_core import build_plane_graph

graph = build_plane_graph([0, 1, 2], {0: [1, 2], 1: [2, 0], 2: [0, 1]}, [0, 2, 1])
up = make_drawing({0: (0, 0), 1: (4, 0), 2: (2, 3)})
down = make_drawing({0: (0, 0), 1: (4, 0), 2: (2, -3)})

# %%
# The turn at each corner is ``a t^2 + b t + c``; here it is linear and
# crosses zero at t = 1/2, when the apex lies on the base.
cert = certify_step(graph, up, down)
print("passed:", cert.passed)
for rec in cert.corners:
    a, b, c = rec.coefficients
    print(f"face {rec.face} corner {rec.vertex}: {a} t^2 + {b} t + {c} -> {rec.verdict}", rec.interval or "")

# %%
# Stopping short of the base is fine.
half = make_drawing({0: (0, 0), 1: (4, 0), 2: (2, 1)})
print("to (2, 1):", certify_step(graph, up, half).passed)
