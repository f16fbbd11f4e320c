"""Exception types raised by the toolkit."""


class InvalidInput(ValueError):
    """Non-finite or malformed numerical input."""


class DimensionMismatch(InvalidInput):
    pass


class DomainError(ValueError):
    """A precondition on parameters does not hold."""


class UnsupportedTransform(ValueError):
    """The image of a region is not representable by the region vocabulary."""


class ResolventError(RuntimeError):
    """A resolvent could not be evaluated at the requested input."""

    def __init__(self, message, w=None, gamma=None):
        super().__init__(message)
        self.w = w
        self.gamma = gamma


class ResolventInfeasible(ResolventError):
    """No active set of the complementarity system is feasible."""


class StepsizeTooSmall(ResolventError):
    """The stepsize is outside the range where the resolvent is single-valued."""


class ConfigError(ValueError):
    """Missing or invalid configuration entries."""
