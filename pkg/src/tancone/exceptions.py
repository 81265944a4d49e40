"""Exception hierarchy shared by every module."""


class TanconeError(Exception):
    """Base class for all library errors."""


class DegenerateInputError(TanconeError, ValueError):
    """Raised when an operation receives a geometrically degenerate input."""


class EmptySampleError(TanconeError, ValueError):
    pass


class UnsupportedVariantError(TanconeError, ValueError):
    pass


class SchemaError(TanconeError, ValueError):
    """Set-spec document does not match the schema."""


class InvariantError(TanconeError, ValueError):
    """A constructed set violates one of its variant invariants."""


class ShallowLadderError(TanconeError, ValueError):
    pass


class UnknownFixtureError(TanconeError, KeyError):
    pass
