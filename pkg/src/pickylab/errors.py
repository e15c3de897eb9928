"""Shared exception types.

The CLI maps these onto exit codes: bad input (parse / invalid argument)
exits 2, scale overruns turn a check into a "skipped" report.
"""


class PickylabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(PickylabError, ValueError):
    """A precondition on an operation's arguments was violated."""


class ParseError(PickylabError, ValueError):
    """Malformed permutation, group source, or catalog file."""


class ScaleExceeded(PickylabError, RuntimeError):
    """The input is larger than the configured bound for this operation."""


class EngineDefect(PickylabError, AssertionError):
    """An internal cross-check failed: a proved theorem came out false,
    or two independent computation paths disagreed.  Never caught."""
