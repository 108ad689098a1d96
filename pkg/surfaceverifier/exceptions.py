class VerifierError(Exception):
    """Base class for all exceptions::

    VerifierError
    |- ArgumentError
    |- ArithmeticDomainError
       |- FieldMismatchError
       |- DivisionByZeroError
       |- UnsupportedCharacteristicError
    |- GeometryError
       |- SingularCurveError
       |- NotAFlexError
       |- UnsupportedPlaceError
       |- UnsupportedFiberError
       |- ClassificationError
    |- ModularFormError
       |- NonIntegralExponentError
       |- ExcludedPrimeError
    |- LatticeError
       |- DegenerateLatticeError
       |- ResidueClassError
    |- DataCorruptionError
    |- CheckSelectionError
    |- SkipCheck

    """

    pass


class ArgumentError(VerifierError):
    """Raised when a method requires a specific argument to be present, but isn't, or the value is out of range."""
    pass


class ArithmeticDomainError(VerifierError):
    """Base class for errors raised by the exact arithmetic layer."""
    pass


class FieldMismatchError(ArithmeticDomainError):
    """Raised when two elements of different fields are combined."""
    pass


class DivisionByZeroError(ArithmeticDomainError):
    """Raised on division by the zero element of a field."""
    pass


class UnsupportedCharacteristicError(ArithmeticDomainError):
    """Raised when a field of characteristic 2 or 3, or of composite order, is requested."""
    pass


class GeometryError(VerifierError):
    """Base class for errors concerning curves, places and fibers."""
    pass


class SingularCurveError(GeometryError):
    """Raised by operations that require a smooth curve, when the discriminant vanishes."""
    pass


class NotAFlexError(GeometryError):
    """Raised when the point handed to the Weierstrass reduction is not an inflection point of the cubic."""
    pass


class UnsupportedPlaceError(GeometryError):
    """Raised when a valuation or local model is requested at a place that cannot be handled, e.g. residue
    characteristic 2 or 3.
    """
    pass


class UnsupportedFiberError(GeometryError):
    """Raised when points of a fiber configuration cannot be counted, e.g. when its components are not rational."""
    pass


class ClassificationError(GeometryError):
    """Raised when a valuation triple does not correspond to any row of the Kodaira table. This indicates a
    non-minimal model or an internal error.
    """
    pass


class ModularFormError(VerifierError):
    """Base class for errors in the q-expansion and Euler factor code."""
    pass


class NonIntegralExponentError(ModularFormError):
    """Raised when an eta product would have a non-integral leading exponent."""
    pass


class ExcludedPrimeError(ModularFormError):
    """Raised when a local factor is requested at 2 or 3."""
    pass


class LatticeError(VerifierError):
    """Base class for errors in the lattice engine."""
    pass


class DegenerateLatticeError(LatticeError):
    """Raised when an operation requires a nondegenerate (or positive-definite) Gram matrix."""
    pass


class ResidueClassError(LatticeError):
    """Raised when a prime is outside the residue class an operation is defined for."""
    pass


class DataCorruptionError(VerifierError):
    """Raised when a computed quantity violates a bound that always holds, such as the Hasse bound."""
    pass


class CheckSelectionError(VerifierError):
    """Raised when a check selection does not match any registered check."""
    pass


class SkipCheck(VerifierError):
    """Raised inside a check to mark it as skipped, e.g. when the configuration does not allow running it."""
    pass
