"""
Exception hierarchy shared by every module.
"""


class LojaError(Exception):
    """Base class for all errors raised by the toolkit."""


class ConfigError(LojaError, ValueError):
    """Configuration file or flag values are invalid."""


class PolynomialSyntaxError(LojaError, ValueError):
    """Polynomial text does not follow the grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class NegativeExponentError(PolynomialSyntaxError):
    """An exponent was written with a minus sign."""


class VariableIndexError(PolynomialSyntaxError):
    """Variable index 0 or beyond the declared variable count."""


class DimensionMismatchError(LojaError, ValueError):
    """Operands live in different numbers of variables."""


class GuardExceededError(LojaError):
    """Input exceeds a configured size guard."""


class ZeroPolynomialError(LojaError, ValueError):
    """The operation needs a nonzero polynomial."""


class NormalizationError(LojaError, ValueError):
    """Weight vector has d(P) = 0 and no normalized form."""


class HypothesisError(LojaError, ValueError):
    """A structural hypothesis of a bound fails on the input."""


class ProbeError(LojaError, ValueError):
    """Curve substitution cannot produce finite orders."""


class StabilizationError(LojaError):
    """Newton number of the stabilized polynomial did not settle."""
