"""Exception hierarchy shared by all genrec modules."""


class GenrecError(Exception):
    """Base class for every error raised by genrec."""


# permutations and groups

class CycleParseError(GenrecError, ValueError):
    def __init__(self, message, column=None):
        self.reason = message
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)
        self.column = column


class MalformedCycle(CycleParseError):
    pass


class RepeatedPoint(CycleParseError):
    pass


class OutOfRange(CycleParseError):
    pass


class DegreeMismatch(GenrecError, ValueError):
    pass


class NotTransitive(GenrecError):
    pass


class BudgetExceeded(GenrecError):
    """The requested enumeration is larger than the caller's budget."""


# fields, projective spaces, builtin families

class NotPrimePower(GenrecError, ValueError):
    pass


class EqualPoints(GenrecError, ValueError):
    pass


class UnknownFamily(GenrecError, ValueError):
    pass


class BadParams(GenrecError, ValueError):
    pass


# geometry reconstruction

class NotTwoTransitive(GenrecError):
    pass


class LineDetectionError(GenrecError):
    """Base for the ways line detection can refuse a group."""


class NoGap(LineDetectionError):
    pass


class DegenerateLine(LineDetectionError):
    pass


class LineTooLarge(LineDetectionError):
    pass


class InconsistentLines(GenrecError):
    pass


class NotABlockSystem(GenrecError):
    pass


class DimensionTooSmall(GenrecError, ValueError):
    pass


# q-degree fitting

class InsufficientSamples(GenrecError, ValueError):
    pass


class HoldoutMismatch(GenrecError):
    pass


class NonPolynomialFamily(GenrecError):
    pass


# coordinatization

class NotProjectiveParameters(GenrecError):
    pass


class CompletionFailed(GenrecError):
    pass


class NotACollineation(GenrecError):
    pass


# input files

class ParseError(GenrecError, ValueError):
    """Bad group file; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None, path=None):
        where = ":".join(str(x) for x in (path, line, column) if x is not None)
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column
        self.path = path
