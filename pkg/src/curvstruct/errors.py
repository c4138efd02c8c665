"""Exception hierarchy shared by every layer of the package."""


class CurvstructError(Exception):
    """Base class for all errors raised by curvstruct."""


class ExpressionError(CurvstructError):
    """Malformed or unsupported expression text.

    ``position`` is the 0-based character offset into the source string,
    or ``None`` when no single position is to blame.
    """

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)


class UnknownIdentifierError(ExpressionError):
    pass


class ZeroDivisionInExpression(ExpressionError, ZeroDivisionError):
    pass


class PoleError(CurvstructError, ZeroDivisionError):
    """A denominator vanishes at the requested evaluation point."""


class ChartMismatchError(CurvstructError, ValueError):
    pass


class SymmetryError(CurvstructError, ValueError):
    pass


class DegenerateMetricError(CurvstructError):
    """The metric determinant is identically zero."""


class ManifestError(CurvstructError):
    """Invalid manifest text; carries the file name and 1-based line when known."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None or line is not None:
            where = f"{path or '<string>'}:{line if line is not None else '?'}: "
        super().__init__(where + message)
