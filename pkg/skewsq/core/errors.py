"""
Exception hierarchy for skewsq.

Every error raised by the library carries the process exit code the CLI
reports for it, so commands can translate failures without a lookup table.
"""


class SkewSqError(Exception):
    """Base class for all skewsq errors."""

    exit_code = 1


class UsageError(SkewSqError):
    """Invalid combination of command-line inputs."""

    exit_code = 2


class DataError(SkewSqError, ValueError):
    """Input data that is malformed, inconsistent, or outside an operation's domain."""

    exit_code = 3


class NumericalError(SkewSqError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    exit_code = 4
