"""Exception hierarchy shared by all knotmaps modules."""


class KnotMapError(Exception):
    """Base class for every error raised by this package."""


# geometry

class GeometryError(KnotMapError):
    pass


class DegenerateVertex(GeometryError):
    pass


class VerticalSegment(GeometryError):
    pass


class NotSimple(GeometryError):
    """The polyline meets itself; ``witness`` holds the offending segment pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonGeneric(GeometryError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# diagrams and invariants

class DiagramError(KnotMapError):
    pass


class UnknownCrossingId(DiagramError):
    pass


class EmptySet(DiagramError):
    pass


class UnknownKnotName(DiagramError):
    pass


class TooManyCrossings(DiagramError):
    pass


# dynamics

class DynamicsError(KnotMapError):
    pass


class NonPositiveSlope(DynamicsError):
    pass


class HitsHalf(DynamicsError):
    pass


class EscapesUnitInterval(DynamicsError):
    pass


# spatial maps

class MapError(KnotMapError):
    pass


class NotInjectiveOnKnot(MapError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInjectiveAtStep(MapError):
    def __init__(self, step, cause):
        super().__init__(f"map is not injective on the knot at step {step}: {cause}")
        self.step = step
        self.cause = cause


class IrrationalEvaluation(MapError):
    pass


class AxisIntersection(MapError):
    pass


class RefinementFailed(MapError):
    pass


# constructions

class ConstructionError(KnotMapError):
    pass


class DuplicateFingerprints(ConstructionError):
    pass


class HeightCollision(ConstructionError):
    def __init__(self, message, crossing=None):
        super().__init__(message)
        self.crossing = crossing


# scenario files

class ScenarioError(KnotMapError):
    pass


class ParseError(ScenarioError):
    pass


class ValidationError(ScenarioError):
    pass


class IoError(KnotMapError):
    pass
