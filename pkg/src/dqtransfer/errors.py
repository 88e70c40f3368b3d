"""Exception hierarchy shared by every module of the package."""


class DQError(Exception):
    """Base class for all errors raised by dqtransfer."""


class InvalidInputError(DQError, ValueError):
    pass


class UnsupportedDomainError(DQError, TypeError):
    pass


class UnsupportedDegreeError(DQError, ValueError):
    pass


class NotAModularFormError(DQError, ArithmeticError):
    pass


class InsufficientPrecisionError(DQError, ArithmeticError):
    pass


class PrecisionUnstableError(DQError, ArithmeticError):
    """A verdict computed at precision P changed when recomputed at 2P."""


class OutOfScopeError(DQError, ValueError):
    pass
