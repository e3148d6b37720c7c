"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """Input is well formed but outside the domain of the operation."""


class NotSymmetrizableError(PreconditionError):
    """A generalized Cartan matrix admits no symmetrizing vector."""


class AmbiguousLogError(ValueError):
    """A discrete logarithm has several solutions in the requested window."""


class ResourceGuardError(RuntimeError):
    """A computation would exceed its configured size guard."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size


class RecognizerMismatch(RuntimeError):
    """Two independent implementations of the same predicate disagree."""
