"""Exception types raised across the package."""

from __future__ import annotations


class PFDError(Exception):
    """Base class for every error raised by :mod:`pfd`."""


class InvalidVertexError(PFDError, KeyError):
    def __init__(self, v):
        super().__init__(v)
        self.vertex = v

    def __str__(self) -> str:
        return f"vertex {self.vertex!r} is not a live vertex"


class PreconditionError(PFDError, ValueError):
    pass


class InvalidParameterError(PFDError, ValueError):
    pass


class GuardError(PFDError, ValueError):
    """The oracle refused an instance that is too large to enumerate."""


class InconsistencyError(PFDError, AssertionError):
    """A produced solution failed re-verification. Always a bug."""


class ParseError(PFDError, ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
