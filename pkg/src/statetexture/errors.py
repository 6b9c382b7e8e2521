"""Exception types shared across the package."""


class StateTextureError(Exception):
    """Base class for all errors raised by this package."""


class InvalidStateError(StateTextureError):
    """A matrix or vector violates the quantum-state invariants
    (normalization, Hermiticity, positivity) beyond tolerance."""


class UsageError(StateTextureError):
    """The caller supplied inconsistent or unsupported arguments."""


class ConvergenceError(StateTextureError):
    """An iterative solver failed to converge; the message carries the
    residual diagnostics."""


class ResourceLimitError(StateTextureError):
    """The request exceeds a hard size limit (e.g. too many subsystems
    for exhaustive bipartition enumeration)."""
