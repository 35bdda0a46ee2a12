"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured size cap.

    ``count`` is the partial size reached (or the exact size, when known)
    at the moment the cap was hit.
    """

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count


class ParseError(ValueError):
    """Malformed group spec or connection-set token."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)
        self.position = position


class ConnectionSetError(ValueError):
    pass


class ConstructionError(ValueError):
    """A construction's hypothesis does not hold for the given input."""
