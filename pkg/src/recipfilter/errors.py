"""Exception types raised across the toolkit."""


class NotPrimitiveError(ValueError):
    """A characteristic polynomial or field modulus is not primitive."""


class ContextMismatchError(ValueError):
    """Operands belong to different fields (different choices of generator)."""


class UnfactorableError(ValueError):
    """A polynomial has factors that are not minimal polynomials of the field."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class InfeasibleReconstructionError(ArithmeticError):
    """No monomial selection realizes a target spectrum."""
