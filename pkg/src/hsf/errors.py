"""Exception types shared across the package."""


class HsfError(Exception):
    """Base class for every package-specific error."""


class InvalidInputError(HsfError, ValueError):
    """An argument violates a documented precondition."""


class CapExceededError(HsfError):
    """An exact computation was requested above the configured size cap."""


class DegenerateLtfError(InvalidInputError):
    """A weight vector with no nonzero entry cannot define a threshold function."""
