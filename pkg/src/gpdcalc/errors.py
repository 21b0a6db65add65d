"""Exception types shared across the package."""


class GpdcalcError(Exception):
    """Base class for all errors raised by gpdcalc."""


class PolySyntaxError(GpdcalcError, ValueError):
    """Malformed polynomial or element text."""

    def __init__(self, message, position, expected=None):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class UnknownCoordinate(GpdcalcError, KeyError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown coordinate {name!r}{where}")

    def __str__(self):
        return self.args[0]


class ChartMismatch(GpdcalcError, ValueError):
    pass


class FrameMismatch(GpdcalcError, ValueError):
    pass


class DegreeError(GpdcalcError, ValueError):
    pass


class InvalidAlgebroid(GpdcalcError, ValueError):
    pass


class NotRhoCompatible(GpdcalcError, ValueError):
    pass


class ValidationFailure(GpdcalcError, ValueError):
    pass


class NotRightInverse(GpdcalcError, ValueError):
    pass


class InconsistentTheta(GpdcalcError, ValueError):
    pass


class NotMultiplicative(GpdcalcError, ValueError):
    pass


class NotInImage(GpdcalcError, ValueError):
    pass


class NotVertical(GpdcalcError, ValueError):
    pass


class InvalidBialgebra(GpdcalcError, ValueError):
    pass


class ModelFileError(GpdcalcError, ValueError):
    """A model file could not be loaded."""
