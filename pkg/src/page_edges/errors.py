"""Exception types raised across the package."""


class PageError(Exception):
    """Base class for all errors raised by page_edges."""


class InvalidParameterError(PageError, ValueError):
    """A parameter is outside its valid range.

    ``field`` names the offending parameter so front ends can report it.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class ShapeError(PageError, ValueError):
    """Array dimensions do not agree or are too small."""


class OracleSizeError(PageError, ValueError):
    """Input too large for the brute-force reference implementations."""
