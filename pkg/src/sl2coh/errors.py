"""Exception types shared across the package."""


class Sl2CohError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(Sl2CohError):
    """Arithmetic attempted between values over different scalar rings."""


class ExactDivisionError(Sl2CohError):
    """Exact division failed; carries the offending monomial description."""

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class MissingVariableError(Sl2CohError):
    """A substitution did not cover a variable that occurs in the polynomial."""


class LaurentExponentError(Sl2CohError):
    """A negative exponent appeared on (or was routed into) a non-Laurent slot."""


class CapExceededError(Sl2CohError):
    """A requested computation exceeds the configured size caps."""


class VerificationError(Sl2CohError):
    """A construction that must self-verify produced a nonzero witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
