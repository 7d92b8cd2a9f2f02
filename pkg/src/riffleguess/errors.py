"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the range where the quantity is defined."""


class CapacityError(RuntimeError):
    """The requested computation exceeds a configured resource limit."""
