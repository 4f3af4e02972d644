"""Exception types raised by fixsum."""


class FixsumError(Exception):
    """Base class for all fixsum errors."""


class UnknownFamily(FixsumError, KeyError):
    def __str__(self):
        return f"unknown family: {self.args[0]!r}"


class UnsupportedFamily(FixsumError, ValueError):
    """The family exists but does not support the requested operation."""


class DomainError(FixsumError, ValueError):
    pass


class TooLarge(FixsumError, ValueError):
    """Brute-force enumeration requested beyond the family's bound."""


class Degenerate(FixsumError, ArithmeticError):
    pass


class DecompositionViolation(FixsumError, ArithmeticError):
    """Binomial inversion produced a negative count."""
