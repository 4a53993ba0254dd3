"""Exception types shared by every module."""


class DescSetError(Exception):
    """Base class for domain errors (precondition failures of an operation)."""


class ValidationError(DescSetError, ValueError):
    """An input value violates the invariants of its type."""


class InsufficientDepthError(DescSetError):
    """A truncated structure is too shallow for the requested construction."""


class NotRepresentableError(DescSetError):
    """A target lies outside the admissible family of a construction."""


class ExtensionError(DescSetError):
    """No canonical extension meets a dense set within the declared bounds."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class MalformedInputError(DescSetError):
    """Serialized input does not match the expected schema."""
