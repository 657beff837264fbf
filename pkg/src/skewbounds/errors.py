"""Exception hierarchy shared by all skewbounds modules."""


class SkewboundsError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(SkewboundsError):
    """A matrix required to be Hermitian failed the symmetry check."""


class ConvergenceFailure(SkewboundsError):
    """The eigensolver did not converge."""


class DimensionMismatch(SkewboundsError):
    """Operands have incompatible matrix dimensions."""


class LengthMismatch(SkewboundsError):
    """Vectors passed to a chain/bound routine have different lengths."""


class DomainError(SkewboundsError):
    """A scalar parameter is outside its allowed domain."""


class ComplexityRefusal(SkewboundsError):
    """An exhaustive search was requested beyond the enumeration cap."""


class ParseError(SkewboundsError):
    """A scenario file is malformed."""


class ValidationError(SkewboundsError):
    """A parsed value fails semantic validation (state, observable, metric)."""


class InvariantViolation(SkewboundsError):
    """A computed result violated a bound-ordering invariant."""


class InternalConsistencyError(SkewboundsError):
    """An internal self-check failed (e.g. imaginary residue on a real quantity)."""
