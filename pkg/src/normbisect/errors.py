"""Exception hierarchy shared by all modules."""


class NormBisectError(Exception):
    """Base class for every error raised by this package."""


class GeometryError(NormBisectError, ValueError):
    pass


class OverlappingRays(GeometryError):
    pass


class CoincidentLines(GeometryError):
    pass


class DegeneratePair(GeometryError):
    """Raised when p == q; the bisector would be the whole plane."""


class DegenerateBasis(GeometryError):
    pass


class InvalidBall(NormBisectError, ValueError):
    pass


class TooFewVertices(InvalidBall):
    pass


class NotSymmetric(InvalidBall):
    pass


class NotConvex(InvalidBall):
    pass


class OriginOutside(InvalidBall):
    pass


class ZeroVector(GeometryError):
    pass


class NotApplicableForStrictPair(NormBisectError):
    pass


class HeightOutOfRange(NormBisectError, ValueError):
    pass


class BracketFailure(NormBisectError, ArithmeticError):
    """No sign change between the strip walls. Indicates a numerical bug."""


class NotOnBisector(GeometryError):
    pass


class OnBaseline(GeometryError):
    pass


class EmptyInput(NormBisectError, ValueError):
    pass
