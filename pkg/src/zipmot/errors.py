"""Exception hierarchy shared by every module.

Bad-input errors derive from ``ValueError`` so callers can catch them
generically; the CLI maps them to exit code 2.  ``InternalError`` signals a
broken invariant inside the engine and maps to exit code 1.
"""


class ZipmotError(Exception):
    """Base class for all engine errors."""


class StructureError(ZipmotError, ValueError):
    """Operands live in incompatible rings (variable sets, ranks)."""


class UnsupportedError(ZipmotError, ValueError):
    """The requested group or route is outside the supported range."""


class PreconditionError(ZipmotError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class ParseError(ZipmotError, ValueError):
    """A textual literal (spec, polynomial, class) could not be parsed."""


class InternalError(ZipmotError, RuntimeError):
    """An internal consistency check failed."""
