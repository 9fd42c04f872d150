"""Exception hierarchy shared by all modules.

The CLI maps :class:`EvaluationError` to exit code 2 and every other
:class:`RevCarlesonError` to exit code 1.
"""


class RevCarlesonError(Exception):
    """Base class for library errors."""


class ParameterError(RevCarlesonError, ValueError):
    """A parameter is outside the range an operation supports."""


class DomainError(RevCarlesonError, ValueError):
    """A point lies outside the closed disc / closed ball."""


class IngestionError(RevCarlesonError, ValueError):
    """A measure document is malformed; the message names the field."""


class CapabilityError(RevCarlesonError):
    """A function variant does not provide the requested derivative."""


class EvaluationError(RevCarlesonError, ArithmeticError):
    """A quadrature node or support point produced a non-finite value."""
