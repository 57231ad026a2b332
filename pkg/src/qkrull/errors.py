"""Exception hierarchy shared by every qkrull module."""


class QKrullError(Exception):
    """Base class for all library errors."""


class StructuralError(QKrullError, ValueError):
    """Malformed input: arity mismatch, exceeded caps, ideal not containing I, ..."""


class ZeroPolynomialError(QKrullError, ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class CapabilityError(QKrullError):
    """The requested computation is outside the supported class of rings.

    ``missing`` names the input that would make it computable.
    """

    def __init__(self, message, missing=None):
        super().__init__(message)
        self.missing = missing


class PreconditionNotMet(QKrullError):
    """A check was not applicable; callers report it as skipped."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class InvariantViolation(QKrullError, AssertionError):
    """A mathematically guaranteed identity failed. Always a bug."""
