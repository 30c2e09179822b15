"""Exception types shared across the package."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor leaves a nonzero remainder."""


class UnboundVariable(LookupError):
    def __init__(self, var):
        self.var = var
        super().__init__(f"no value assigned to a[{var[0]},{var[1]}]")


class PolySyntaxError(ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class BadDimension(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class DimensionCapExceeded(ValueError):
    pass


class NoKernel(ArithmeticError):
    """The matrix has full column rank; only the zero vector is in its kernel."""


class NoRelation(ArithmeticError):
    pass


class VerificationFailure(AssertionError):
    """A discovered relation failed its extended check. Always a bug."""


class LetterOutOfRange(ValueError):
    pass


class IllegalWord(ValueError):
    pass


class NotInDomain(ValueError):
    pass
