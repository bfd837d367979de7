"""Exception and warning types raised across the package."""


class SusyPTError(Exception):
    """Base class for library errors."""


class DomainError(SusyPTError, ValueError):
    """A point lies outside the potential's domain or too close to a pole."""


class SingularityTooClose(DomainError):
    """A grid point sits within 10 grid spacings of a potential singularity."""


class UnboundedError(SusyPTError):
    """The superpotential has no finite limit at large x (trigonometric families)."""


class NotPTError(SusyPTError):
    """The parameters violate the PT condition of the family."""


class NotBrokenError(SusyPTError):
    """An operation that needs broken PT symmetry got an unbroken or non-PT spec."""


class DegenerateConditionError(SusyPTError, ZeroDivisionError):
    """2A + alpha = 0 with C != 0 in the two-parameter PT condition."""


class DegenerateRecurrence(SusyPTError, ArithmeticError):
    """A leading Jacobi recurrence coefficient vanishes."""


class TruncationError(SusyPTError):
    """A level beyond the normalizability bound was requested."""


class TruncationNotice(UserWarning):
    """An algebraic spectrum was cut at the normalizability bound."""


class FormMismatch(SusyPTError):
    """A closed-form eigenfunction fails its Schrodinger residual gate."""


class GridTooCoarse(SusyPTError, ValueError):
    """Grid spacing is too large for the finite-difference stencils."""


class NoConvergence(SusyPTError):
    """The dense eigensolver failed to converge."""


class DimensionCap(SusyPTError, ValueError):
    """Matrix dimension exceeds the configured cap."""


class NoSignChange(SusyPTError):
    """Both ends of a bisection bracket classify alike."""
