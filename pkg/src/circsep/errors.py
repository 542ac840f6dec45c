class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateTriangle(GeometryError):
    pass


class CoincidentPoints(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class PointNotOutside(GeometryError):
    pass


class PointNotOnBoundary(GeometryError):
    pass


class PolygonsIntersect(GeometryError):
    pass


class EmptyInput(GeometryError):
    pass


class TooFewPoints(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class NotAncestor(ValueError):
    pass


class AlreadyAdjacent(ValueError):
    pass


class SeedFailure(RuntimeError):
    pass


class InvariantBroken(RuntimeError):
    pass


class NoRoot(RuntimeError):
    pass
