"""Exception hierarchy shared by every module of the package."""


class GleasonError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GleasonError, ValueError):
    """An argument lies outside the set where the operation is defined."""


class AmbiguousModulusError(GleasonError, ValueError):
    """A coordinate is too close to the unit circle to decide whether it lies on it."""

    def __init__(self, index, modulus):
        self.index = index
        self.modulus = modulus
        super().__init__(
            f"entry {index} has modulus {modulus!r}, within 1e-12 of 1 but not unimodular; "
            "declare it exactly unimodular or move it away from the circle"
        )


class UnsupportedRestrictionError(GleasonError):
    """Restricting to the requested index set would leave the closed tail forms."""


class UnsupportedPredicateError(GleasonError):
    """An index predicate does not have the shape an operation requires."""


class NonRepresentableTailError(GleasonError):
    """An operation needs a closed-form tail but got a scan-backed one."""


class CannotCertifyError(GleasonError):
    """A certified bound needed by the operation could not be established."""


class ConditioningError(GleasonError, ArithmeticError):
    """A linear solve is too badly conditioned to trust."""


class SolverError(GleasonError):
    """An iterative solver failed to converge."""

    def __init__(self, message, last_iterate=None, residual=None):
        self.last_iterate = last_iterate
        self.residual = residual
        super().__init__(message)


class ParseError(GleasonError, ValueError):
    """A JSON payload failed validation; ``field`` names the offending path."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
