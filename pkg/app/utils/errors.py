"""Exception hierarchy for ZornLab."""

from typing import Any, Optional


class ZornLabError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(ZornLabError, ValueError):
    """Operands belong to different fields."""


class FieldDivisionError(ZornLabError, ZeroDivisionError):
    """Inverse of the zero element requested."""


class UnsupportedFieldError(ZornLabError, ValueError):
    """Field order outside the supported set."""

    def __init__(self, q: Any):
        super().__init__(f"unsupported field order: {q}")
        self.q = q


class ElementParseError(ZornLabError, ValueError):
    """Text is not a canonical element."""


class SingularElementError(ZornLabError, ArithmeticError):
    """Octonion of norm zero where an invertible one is needed."""


class SingularMatrixError(ZornLabError, ArithmeticError):
    """Matrix over GF(q) is not invertible."""


class PreconditionError(ZornLabError, ValueError):
    """Operation called outside its precondition."""


class UnsupportedConstructionError(ZornLabError):
    """Construction undefined for the given characteristic or order."""


class AutomorphismRejected(ZornLabError):
    """A candidate map failed its audit; `witness` holds the failing inputs."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class UnknownSuiteError(ZornLabError, KeyError):
    """Suite name absent from the catalogue."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class InvalidTripleError(ZornLabError, ValueError):
    """A triple fails the doubling-triple predicate."""


class InternalConsistencyError(ZornLabError):
    """A computation contradicted a proven invariant."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class MissingGroupDataError(ZornLabError):
    """Cached automorphism-group data is absent."""
