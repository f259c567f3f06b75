"""Exception hierarchy shared by every module of the package."""


class BrenkeError(ValueError):
    """Base class for all parameter and precondition violations."""


class InsufficientOrderError(BrenkeError):
    """A truncated series is used beyond the order it is valid to."""


class NotInvertibleError(BrenkeError):
    pass


class NonTerminatingError(BrenkeError):
    pass


class PoleError(BrenkeError):
    """A denominator Pochhammer symbol or Dunkl factorial vanishes."""


class ParameterError(BrenkeError):
    pass


class QuadratureError(BrenkeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
