"""Exception hierarchy shared by every module."""


class ConvexMorphError(Exception):
    """Base class for all domain errors raised by the package."""


# graph_core
class GraphError(ConvexMorphError):
    pass


class NonPlanarRotation(GraphError):
    pass


class NotSimple(GraphError):
    pass


class Disconnected(GraphError):
    pass


class BadOuterFace(GraphError):
    pass


class WouldDisconnect(GraphError):
    pass


class UnknownElement(GraphError):
    pass


class SmoothingCreatesParallelEdge(GraphError):
    pass


class SmoothingCreatesLoop(GraphError):
    pass


# connectivity
class TooSmall(ConvexMorphError):
    pass


# decomposition
class NotConvexInput(ConvexMorphError):
    pass


class NoInternalVertex(ConvexMorphError):
    pass


class NoAugmentingPath(ConvexMorphError):
    pass


class NoTwoComponentPair(ConvexMorphError):
    pass


# geometry
class MissingCoordinates(ConvexMorphError):
    pass


class DegenerateEdge(ConvexMorphError):
    pass


class NotStrictlyConvex(ConvexMorphError):
    pass


class SameSide(ConvexMorphError):
    pass


# level drawing
class NonGenericDirection(ConvexMorphError):
    pass


class InfeasiblePolygon(ConvexMorphError):
    pass


class NotHierarchicalSt(ConvexMorphError):
    pass


class NotStrictlyConvexGraph(ConvexMorphError):
    pass


class ValidationExhausted(ConvexMorphError):
    pass


# morph engine / certify
class NotLevelRespecting(ConvexMorphError):
    pass


class NotEquivalent(ConvexMorphError):
    pass


class CertificateFailed(ConvexMorphError):
    pass


class OrderMismatch(ConvexMorphError):
    pass


class GraphMismatch(ConvexMorphError):
    pass


class NotConvexGraph(ConvexMorphError):
    pass
