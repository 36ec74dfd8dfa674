# errors.py
"""
Exception hierarchy. Each error carries the process exit code the CLI reports.
"""


class KirchhoffError(Exception):
    """Base class for every error raised by the library."""
    exit_code = 1


class InvalidGraphError(KirchhoffError):
    """Malformed graph input: bad JSON, unknown fields, loops, unknown vertices, bad sigma."""
    exit_code = 2


class QueryError(InvalidGraphError):
    """Bad query arguments: unknown source/sink, index collision, inconsistent contributor."""


class CapacityError(KirchhoffError):
    """An enumeration or matrix kernel would exceed its configured cap."""
    exit_code = 3


class CapabilityError(KirchhoffError):
    """The requested method or format does not apply to this input."""
    exit_code = 3
