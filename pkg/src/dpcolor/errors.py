"""Exception hierarchy shared by every module of the toolkit."""


class DPColorError(Exception):
    """Base class for all toolkit errors."""


class StructureError(DPColorError):
    """A rotation system or graph is malformed.

    ``dart`` names the offending ordered edge when one can be identified.
    """

    def __init__(self, message, dart=None):
        super().__init__(message)
        self.dart = dart


class InputError(DPColorError, ValueError):
    """An argument does not meet the documented input contract."""


class PreconditionError(DPColorError):
    """A procedure's hypothesis does not hold; ``witness`` explains why."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(DPColorError):
    """An exhaustive search would exceed the configured budget."""


class GraphFormatError(InputError):
    """A graph document failed to parse or validate.

    Syntax errors carry ``line``/``column``; semantic errors carry the
    offending ``field`` (for instance an edge key such as ``"0-3"``).
    """

    def __init__(self, message, line=None, column=None, field=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif field is not None:
            where = f" (at {field})"
        super().__init__(message + where)
        self.line = line
        self.column = column
        self.field = field
