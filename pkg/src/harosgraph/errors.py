"""Shared exception types."""


class HarosError(Exception):
    """Base class for failures raised by this package."""


class AdjacencyError(HarosError, ValueError):
    """Operands are not Farey neighbours, so the operation is undefined."""


class ResourceLimitError(HarosError, RuntimeError):
    """A size cap was hit before the computation started."""


class AmbiguousBreakpointError(HarosError, ValueError):
    """A floating-point input sits within rounding error of a breakpoint."""
