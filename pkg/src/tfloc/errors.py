"""Exception taxonomy shared by all tfloc modules.

Input-shaped problems (bad domain, unsorted tables, insufficient resolution)
raise subclasses of TflocInputError; a violated mathematical property raises
PropertyViolation.  The CLI maps the former to exit code 1 and the latter to
exit code 2.
"""


class TflocError(Exception):
    """Base class for all library errors."""


class TflocInputError(TflocError):
    """Caller handed us something unusable (exit code 1 territory)."""


class DomainError(TflocInputError):
    """Parameter outside its mathematical domain, e.g. D < 2 or eta outside (0, 1)."""


class ResolutionError(TflocInputError):
    """Grid too coarse for the requested computation."""


class ExtentError(TflocInputError):
    """Query range exceeds the stored node or zero table extent."""


class InputError(TflocInputError):
    """Malformed data: unsorted zeros, non-vanishing endpoints, empty input."""


class UnsupportedOrderError(TflocInputError):
    """Derivative order outside the implemented range."""


class DegenerateInputError(TflocInputError):
    """Input is degenerate for the requested functional, e.g. identically zero."""


class PropertyViolation(TflocError):
    """A checked mathematical property failed (exit code 2 territory)."""


class DecayViolationError(PropertyViolation):
    """A decay fit produced a non-positive rate or the bound was exceeded."""
