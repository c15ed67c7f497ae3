"""Exception types shared across the library.

Plain ``ValueError`` is used for ordinary precondition violations
(dimension mismatches, bad arguments).  The classes below exist where
callers need to distinguish failure modes programmatically, e.g. the
command line maps them to dedicated exit codes.
"""


class CubiclatError(Exception):
    """Base class for library-specific errors."""


class DegenerateGramError(CubiclatError):
    """Raised when an operation requires a nondegenerate Gram matrix."""


class ParityError(CubiclatError):
    """Raised when an integral basis completion fails for parity reasons."""


class LatticeFormatError(CubiclatError):
    """Raised when a lattice file cannot be parsed or fails validation."""
