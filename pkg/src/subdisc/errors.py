"""Exception types shared across the package."""


class SubdiscError(Exception):
    """Base class for errors raised by this package."""


class PrecisionError(SubdiscError):
    """A requested enclosure could not be certified at the working precision."""


class ComputationError(SubdiscError):
    """An internal contract was violated during an exact computation."""
