"""Exception hierarchy shared by the engine, the formulae and the CLI.

The CLI maps each category to an exit code, so every error raised by the
library derives from exactly one of the category bases below.
"""


class OffsetDegreeError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ValidationError(OffsetDegreeError, ValueError):
    """Input rejected before any formula ran (bad syntax, invalid curve...)."""

    exit_code = 2


class DegeneracyError(OffsetDegreeError, ArithmeticError):
    """A formula precondition collapsed during the computation."""

    exit_code = 3


class CostGuard(OffsetDegreeError):
    """The requested computation is outside the supported size envelope."""

    exit_code = 4


class InternalError(OffsetDegreeError, RuntimeError):
    """Two independent code paths disagree; indicates an engine bug."""

    exit_code = 1
