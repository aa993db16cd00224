"""Exception hierarchy shared by the library and the command line."""


class ProjDecompError(ValueError):
    """Base class for all errors raised by projdecomp."""


class DimensionError(ProjDecompError):
    """Operand sizes do not agree."""


class ShapeError(ProjDecompError):
    """The matrix has the wrong shape for the requested operation."""


class DomainError(ProjDecompError):
    """Input values lie outside the domain of the operation."""


class InfeasibleZeroLineError(DomainError):
    """A row or column is entirely zero, so unit RMS cannot be reached."""

    def __init__(self, zero_rows, zero_cols):
        self.zero_rows = list(zero_rows)
        self.zero_cols = list(zero_cols)
        parts = []
        if self.zero_rows:
            parts.append("all-zero row(s) " + ", ".join(map(str, self.zero_rows)))
        if self.zero_cols:
            parts.append("all-zero column(s) " + ", ".join(map(str, self.zero_cols)))
        super().__init__("infeasible_zero_line: " + "; ".join(parts))


class DegenerateColumnError(DomainError):
    """A line has zero variance and cannot be standardized."""

    def __init__(self, index, axis="column"):
        self.index = index
        self.axis = axis
        super().__init__(f"degenerate {axis} {index}: zero variance")


class ParseError(ProjDecompError):
    """A matrix file could not be parsed."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
