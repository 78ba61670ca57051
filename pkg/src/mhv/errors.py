"""Exception types shared across the package."""


class MhvError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MhvError):
    """A graph, colouring or decomposition file is malformed."""


class InputError(MhvError):
    """An argument violates a documented precondition."""


class ResourceLimitError(MhvError):
    """A solver refused to run because a configured resource cap was hit."""
