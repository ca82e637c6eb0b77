"""Exception types raised by geogate."""


class DomainError(ValueError):
    """An argument lies outside the admissible domain of an operation."""


class UndefinedPhaseError(DomainError):
    """The overlap between two states is too small for its phase to mean anything."""


class AmbiguousPathError(DomainError):
    """A Bloch-sphere path has steps too large to fix the geodesic between points."""
