"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition or type invariant."""


class CapacityError(ValidationError):
    """A requested dimension exceeds the configured desk-scale limits."""
