"""Exception types raised across the package."""


class QPlaneError(Exception):
    """Base class for every error raised by qplane."""


class DivisionByZero(QPlaneError, ZeroDivisionError):
    pass


class SingularSubstitution(QPlaneError):
    """A substitution sent a denominator to the zero polynomial."""


class UnknownParameter(QPlaneError, KeyError):
    pass


class ParseError(QPlaneError, ValueError):
    pass


class MissingRule(QPlaneError):
    def __init__(self, left, right):
        super().__init__(f"no rule for out-of-order pair {left} {right}")
        self.pair = (left, right)


class UnknownSuite(QPlaneError, KeyError):
    pass
