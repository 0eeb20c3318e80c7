"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class OkunError(Exception):
    """Base class for every error raised by okunlaw."""


class DataError(OkunError, ValueError):
    """Malformed or invalid input data.

    ``line`` holds the 1-based line number in the source text when the
    problem can be attributed to one line.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleError(OkunError, ValueError):
    """The requested computation cannot be carried out on this sample."""


class DegenerateError(InfeasibleError):
    """A statistic is undefined because the input has zero variance."""


class UnknownPresetError(OkunError, LookupError):
    """No preset with the requested name."""
