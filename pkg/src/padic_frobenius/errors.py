"""Exception hierarchy shared by all modules."""


class FrobeniusError(Exception):
    """Base class for every error raised by this package."""


class CompositeP(FrobeniusError, ValueError):
    pass


class UnsupportedP(FrobeniusError, ValueError):
    pass


class SizeExceeded(FrobeniusError, ValueError):
    pass


class DivisionByZero(FrobeniusError, ZeroDivisionError):
    pass


class MixedFields(FrobeniusError, ValueError):
    pass


class SingularCurve(FrobeniusError, ValueError):
    pass


class DegenerateCurve(SingularCurve):
    """Curve is singular or violates the form's nonvanishing condition."""


class JInvariantZero(FrobeniusError, ValueError):
    pass


class JInvariant1728(FrobeniusError, ValueError):
    pass


class NoHasseInteger(FrobeniusError, ArithmeticError):
    """A p-adic trace value has no representative in the Hasse window."""


class PrecisionExhausted(FrobeniusError, ArithmeticError):
    pass


class NotPadicInteger(FrobeniusError, ValueError):
    pass


class BadParameter(FrobeniusError, ValueError):
    pass


class BadInput(FrobeniusError, ValueError):
    pass


class ConductorMismatch(FrobeniusError, ValueError):
    pass


class TrivialCharacter(FrobeniusError, ValueError):
    pass


class ZeroArgument(FrobeniusError, ValueError):
    pass


class BadModulus(FrobeniusError, ValueError):
    pass
