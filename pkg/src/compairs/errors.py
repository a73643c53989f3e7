"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(RuntimeError):
    """A size guard would be exceeded by an exhaustive computation."""


class UnsupportedError(ValueError):
    """The operation is not defined for this poset (e.g. k != 2)."""
