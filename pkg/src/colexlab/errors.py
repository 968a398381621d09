"""Shared exception types."""


class ColexlabError(Exception):
    """Base class for package errors."""


class ConstructionError(ColexlabError):
    """A lattice or code failed a structural invariant while being built."""


class DegenerateBoundaryError(ColexlabError):
    """A region boundary violates the simple-alternating-cycle assumption."""


class ResourceError(ColexlabError):
    """An exact computation exceeds the configured size limits."""


class ConfigurationError(ColexlabError):
    """A braiding configuration did not return excitations to the vacuum."""
