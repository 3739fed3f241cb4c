"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside an operation's domain (empty set, bad direction, ...)."""


class DegenerateInputError(DomainError):
    """Not enough structure in the data to estimate anything."""
