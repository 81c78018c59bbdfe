"""Exception types shared across the package."""


class BosonflowError(Exception):
    """Base class for all domain errors raised by this package."""


class ConventionMismatch(BosonflowError):
    """Two series with different denominator conventions or orders were mixed."""


class PreconditionError(BosonflowError):
    """An operation was called on input outside its domain."""


class InsufficientOrder(BosonflowError):
    """A truncated input is too short to determine a requested coefficient."""


class InternalConsistencyError(BosonflowError):
    """An invariant that should hold by construction failed; signals a bug."""


class ParseError(BosonflowError):
    """Syntax error in a boson word, operator, or field expression."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position
