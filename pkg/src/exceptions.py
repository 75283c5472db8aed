"""Error hierarchy for paramono.

Every error carries the process exit code the CLI reports for it.
"""


class ParamonoError(Exception):
    """Base class for all paramono errors."""

    exit_code: int = 1


class DimensionMismatchError(ParamonoError, ValueError):
    """Vectors, matrices or relations of incompatible sizes."""

    exit_code = 3


class VacuousSubspaceError(ParamonoError):
    """A restriction to the zero subspace was requested."""

    exit_code = 3


class NotMonotoneError(ParamonoError, ValueError):
    """A quadratic form required to be PSD is not."""

    exit_code = 3

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NotNonexpansiveError(ParamonoError, ValueError):
    """A map required to be nonexpansive has operator norm above one."""

    exit_code = 3


class OutOfDomainError(ParamonoError, ValueError):
    """The operation is not defined for this kind of operator."""

    exit_code = 3


class SpecDecodeError(ParamonoError):
    """The operator specification is not UTF-8 JSON."""

    exit_code = 2


class SpecSchemaError(ParamonoError):
    """The operator specification violates the schema."""

    exit_code = 3

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class MethodDisagreementError(ParamonoError):
    """Two decision procedures for the same property disagree.

    This signals a numerical-rank misjudgment; rerun with an adjusted tolerance.
    """

    exit_code = 4

    def __init__(self, prop: str, first: bool, second: bool, tol: float):
        super().__init__(
            f"Methods disagree on '{prop}' ({first} vs {second}) at tol={tol:g}; "
            "rerun with an adjusted --tol"
        )
        self.prop = prop
        self.first = first
        self.second = second
        self.tol = tol


class InvalidParameterError(ParamonoError, ValueError):
    """A constructor parameter is outside its admissible range."""

    exit_code = 3
