"""Exception hierarchy shared by all modules."""


class PretzelError(Exception):
    """Base class for every error raised by this package."""


class NotDivisible(PretzelError, ArithmeticError):
    """An exact division left a nonzero remainder."""


class DivideByZero(PretzelError, ZeroDivisionError):
    pass


class NonIntegerExponent(PretzelError, ValueError):
    pass


class ZeroBase(PretzelError, ValueError):
    pass


class ZeroPolynomial(PretzelError, ValueError):
    pass


class PolySyntaxError(PretzelError, ValueError):
    """Polynomial text could not be parsed; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PreconditionViolation(PretzelError, ValueError):
    pass


class UnsupportedLink(PretzelError, ValueError):
    """More than one even twist parameter (three or more components)."""


class MissingOrientation(PretzelError, ValueError):
    pass


class DegenerateSystem(PretzelError, ArithmeticError):
    pass


class VerificationFailed(PretzelError, AssertionError):
    def __init__(self, check, detail=""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check
