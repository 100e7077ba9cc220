"""Exception hierarchy used across the package."""


class TwistFlipError(Exception):
    """Base class for all errors raised by twistflip."""


class TriangulationError(TwistFlipError, ValueError):
    """A triangle list does not describe a valid ideal triangulation."""


class NotFlippable(TwistFlipError):
    """The edge lies twice in a single triangle."""

    def __init__(self, edge):
        super().__init__(f"edge {edge} is not flippable (both sides lie in one triangle)")
        self.edge = edge


class MultiCurveError(TwistFlipError, ValueError):
    """Weights do not form admissible normal coordinates."""

    def __init__(self, message, triangle=None):
        super().__init__(message)
        self.triangle = triangle


class ParityViolation(MultiCurveError):
    pass


class TriangleInequalityViolation(MultiCurveError):
    pass


class InadmissibleResult(MultiCurveError):
    pass


class EmptyEdge(TwistFlipError):
    """A crossing point was requested on an edge of weight zero."""


class CapExceeded(TwistFlipError):
    """The point-level oracle refused an instance above its size cap."""


class NullHomotopic(TwistFlipError):
    """A loop built from a chain tightened to nothing."""


class StandardizationFailed(TwistFlipError):
    """A twist curve could not be flipped into an annulus of two triangles."""

    def __init__(self, message, triangulation=None, weights=None):
        super().__init__(message)
        self.triangulation = triangulation
        self.weights = weights


class NotSimple(TwistFlipError):
    """The operation needs a curve of total weight at most 2 * zeta."""


class LemmaViolation(TwistFlipError):
    """No reducing flip exists for a connected curve of large weight.

    This can only follow from corrupted state.
    """
