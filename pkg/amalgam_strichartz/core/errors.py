import warnings
from typing import Optional, Sequence


class AmalgamError(ValueError):
    pass


class DomainError(AmalgamError):
    """Arguments outside the domain of an operation.

    Args:
        message (str): What went wrong
        reasons (Sequence[str]): Machine readable reason codes, if any
    """

    def __init__(self, message: str, reasons: Sequence[str] = ()):
        super().__init__(message)
        self.reasons = tuple(reasons)


class ResolutionError(AmalgamError):
    """The working grid (or time step) cannot represent the requested computation.

    Args:
        message (str): What went wrong
        suggestion (str): An actionable hint, e.g. the extent that would work
    """

    def __init__(self, message: str, suggestion: Optional[str] = None):
        if suggestion:
            message = f"{message} ({suggestion})"
        super().__init__(message)
        self.suggestion = suggestion


class ConvergenceError(AmalgamError):
    def __init__(self, message: str, ratio: float):
        super().__init__(message)
        self.ratio = ratio


class ConfigError(AmalgamError):
    pass


class AmalgamWarning(UserWarning):
    pass


def warn(msg: str):
    warnings.warn(msg, category=AmalgamWarning, stacklevel=2)
