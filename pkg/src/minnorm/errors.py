"""Exception types raised across the library."""


class MinNormError(Exception):
    """Base class for all library errors."""


class InvalidInputError(MinNormError, ValueError):
    """Malformed or out-of-contract input (bad counts, indices, numbers)."""


# -- mesh ------------------------------------------------------------------

class DuplicateProjectionError(InvalidInputError):
    """Two data points project onto the same plane location."""


class CollinearDataError(InvalidInputError):
    """All projected points lie on one line; no triangulation exists."""


class DegenerateTriangleError(InvalidInputError):
    """A triangle has (nearly) zero projected area."""


class OverlappingTrianglesError(InvalidInputError):
    """Two triangles have intersecting projected interiors."""


class DanglingVertexError(InvalidInputError):
    """A data point is not a vertex of any triangle."""


class TieAngleError(InvalidInputError):
    """Two edges leave a vertex in the same direction."""


class NotIncidentError(InvalidInputError):
    """An edge id was used at a vertex it does not touch."""


# -- basis -----------------------------------------------------------------

class SingularDirectionsError(InvalidInputError):
    """Three edge directions admit no unique affine combination."""


class NoValidRotationError(InvalidInputError):
    """No cyclic rotation of a vertex star keeps every leading weight nonzero."""


# -- calculus / network ----------------------------------------------------

class ExponentRangeError(MinNormError, ValueError):
    """Signed-power exponent outside the integrable range r > -1."""


class OutOfRangeError(MinNormError, ValueError):
    """Curve parameter outside the edge interval [0, length]."""


# -- solver ----------------------------------------------------------------

class NumericallySingularGramError(MinNormError):
    """The basis Gram matrix failed to factor; the basis is defective."""


class NoConvergenceError(MinNormError):
    """Iteration budget exhausted before the residual tolerance was met.

    Carries the last iterate and the partial report so callers can still
    inspect or persist the failed solve.
    """

    def __init__(self, message, alpha=None, report=None):
        super().__init__(message)
        self.alpha = alpha
        self.report = report
