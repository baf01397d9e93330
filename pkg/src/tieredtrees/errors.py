"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidTreeError(DomainError):
    """A candidate tiered tree violates one of the tiering constraints."""


class CapacityError(RuntimeError):
    """A request exceeds the configured enumeration capacity."""


class VerificationError(AssertionError):
    """An identity that must hold exactly was found to fail."""
