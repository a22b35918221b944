"""Exceptions raised by maxtrace."""


class MaxTraceError(Exception):
    pass


class FieldMismatchError(MaxTraceError, ValueError):
    """Operands live in different fields or at different tower levels."""


class CapExceededError(MaxTraceError, ValueError):
    """An exhaustive enumeration would exceed its configured cap."""


class CodeFileError(MaxTraceError, ValueError):
    """A code file is malformed."""


class InvariantError(MaxTraceError, AssertionError):
    """A proven identity failed; always an implementation bug."""
