"""Exception hierarchy. Every domain failure derives from :class:`DomainError`."""


class DomainError(Exception):
    """A well-formed request that has no mathematical answer."""

    code = "DomainError"

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


class NonPrimeError(DomainError):
    pass


class ReducibleModulusError(DomainError):
    pass


class NotPrimitiveError(DomainError):
    pass


class FieldTooLargeError(DomainError):
    pass


class DivisionByZeroError(DomainError, ZeroDivisionError):
    pass


class MixedFieldsError(DomainError):
    pass


class NotADivisorError(DomainError):
    pass


class ZeroPolynomialError(DomainError):
    pass


class DuplicateAbscissaError(DomainError):
    pass


class NotAPermutationError(DomainError):
    pass


class WrongCardinalityError(DomainError):
    pass


class SingularMatrixError(DomainError):
    pass


class DegenerateInputError(DomainError):
    """Cross product of equal points/lines."""


class NotAnInternalNucleusError(DomainError):
    pass


class PointAtInfinityError(DomainError):
    pass


class NucleusMissingError(DomainError):
    pass


class NotDecomposableError(DomainError):
    pass


class InvalidTransformError(DomainError):
    pass


class InconsistentDistributionError(DomainError):
    pass


class InfeasibleTailError(DomainError):
    pass


class EmptyDistributionError(DomainError):
    pass


class ShapeMismatchError(DomainError):
    pass


class ParameterOutOfRangeError(DomainError):
    pass


class InfeasibleParityError(DomainError):
    pass


class EvenFieldError(DomainError):
    pass


class TooSmallForClaimError(DomainError):
    pass


class TooLargeError(DomainError):
    pass


class MissingArcRepresentativesError(DomainError):
    pass


class ParseError(ValueError):
    """Malformed text input (field spec, polynomial, point)."""
