"""Exception types shared across the package."""


class ArcAlgError(Exception):
    """Base class for all package errors."""


class InvalidParameters(ArcAlgError, ValueError):
    """Raised for out-of-range sizes, mismatched weights or malformed input."""


class InvalidComplex(ArcAlgError):
    """A differential squares to something nonzero."""


class StructuralAssumptionFailed(ArcAlgError):
    """A subspace that should be a submodule (or sub-bimodule) is not stable."""


class TruncationError(ArcAlgError):
    """The requested homological degree is not certified by the built window."""
