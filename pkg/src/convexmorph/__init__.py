"""Convex drawings and unidirectional convex morphs of plane graphs.

All geometry is exact (``gmpy2.mpq``).  The main entry points are
:func:`morph_strictly_convex`, :func:`morph_convex` and
:func:`certify_morph`.
"""

from .certify import Report, StepCertificate, certify_morph, certify_step, corner_polynomial
from .connectivity import (
    classify_convexity,
    is_internally_triconnected,
    is_triconnected,
    separation_pairs,
)
from .decomposition import decompose, next_removal, replay
from .errors import ConvexMorphError
from .geometry import check_drawing, generic_direction, make_drawing
from .graph_core import PlaneGraph, build_plane_graph, smooth
from .level_drawing import Hierarchy, convex_level_drawing, hierarchy_from_drawing, strictify
from .morph_engine import (
    InsertionCoefficients,
    Morph,
    choose_epsilon_xi,
    convex_step_bound,
    left_to_right_equivalent,
    morph_convex,
    morph_cycle,
    morph_strictly_convex,
    strict_step_bound,
    unidirectional_step,
)

__all__ = [
    "ConvexMorphError",
    "Hierarchy",
    "InsertionCoefficients",
    "Morph",
    "PlaneGraph",
    "Report",
    "StepCertificate",
    "build_plane_graph",
    "certify_morph",
    "certify_step",
    "check_drawing",
    "choose_epsilon_xi",
    "classify_convexity",
    "convex_level_drawing",
    "convex_step_bound",
    "corner_polynomial",
    "decompose",
    "generic_direction",
    "hierarchy_from_drawing",
    "is_internally_triconnected",
    "is_triconnected",
    "left_to_right_equivalent",
    "make_drawing",
    "morph_convex",
    "morph_cycle",
    "morph_strictly_convex",
    "next_removal",
    "replay",
    "separation_pairs",
    "smooth",
    "strict_step_bound",
    "strictify",
    "unidirectional_step",
]
