"""Exception types raised by the library."""


class SphereBVError(Exception):
    """Base class for all library-specific errors."""


class CutoffTooSmallError(SphereBVError):
    """A weight-sequence operation needs a larger index cutoff."""


class CutoffExceededError(SphereBVError):
    """An associated-function evaluation ran past the usable index range.

    Carries ``lower_bound``, the best value established before the cutoff.
    """

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class NonPositiveEntryError(SphereBVError):
    """A weight sequence contained a non-positive entry or M_0 != 1."""


class ConditionMissingError(SphereBVError):
    """A required structural condition on the weight sequence is absent."""


class SearchFailedError(SphereBVError):
    """A witness/constant search exhausted its grid without success."""


class NonOrthogonalFrameError(SphereBVError):
    """A pole frame was not an exact orthogonal matrix."""


class SizeGuardExceededError(SphereBVError):
    """Requested exact construction exceeds the configured size guard."""


class NotHarmonicError(SphereBVError):
    """A polynomial expected to be harmonic is not annihilated by the Laplacian."""


class ZeroPolynomialError(SphereBVError):
    """The zero polynomial is not a valid input here."""


class BadMultiIndexError(SphereBVError):
    """A multi-index argument is malformed for the requested operation."""


class UnsupportedDimensionExactError(SphereBVError):
    """Certified-exact quadrature was requested in a dimension without it."""


class DegreeUnderflowWarning(UserWarning):
    """Quadrature exactness could not be certified for the requested degree."""


class InsufficientDegreesError(SphereBVError):
    """An expansion has too few degrees for a meaningful classification."""


class QuasianalyticWeightError(SphereBVError):
    """Support detection requires a non-quasianalytic weight sequence."""


class RegionOverlapsSupportError(SphereBVError):
    """A rate check region intersects the estimated support."""


class DomainError(SphereBVError):
    """A point argument lies outside the required domain."""
