"""Exception hierarchy shared by every module."""


class LehmerError(Exception):
    """Base class for all errors raised by :mod:`lehmer`."""


class ParseError(LehmerError, ValueError):
    pass


class DomainError(LehmerError, ValueError):
    """An input violates an operation's mathematical precondition."""


class ConvergenceError(LehmerError, ArithmeticError):
    """Root finding did not reach the requested accuracy.

    ``best_residual`` holds the smallest achieved error radius so callers can
    decide whether to retry with a looser tolerance.
    """

    def __init__(self, message, best_residual=float("inf")):
        super().__init__(message)
        self.best_residual = best_residual


class QuadratureError(LehmerError, ArithmeticError):
    pass


class CheckpointError(LehmerError, ValueError):
    pass
