"""Exception types shared across the package."""


class LehmannError(Exception):
    """Base class for all library errors."""


class DomainError(LehmannError, ValueError):
    """An argument lies outside its mathematical domain."""


class SupportError(DomainError):
    """A value or distribution pair is incompatible with a support."""


class DegenerateSampleError(LehmannError):
    """The sample cannot identify the exponent (saturated CDF values)."""


class NumericalError(LehmannError):
    """A numerical routine failed to converge.

    Carries the best available estimate and its error bound so callers
    can inspect how badly the computation went.
    """

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class ParseError(LehmannError, ValueError):
    """A descriptor or config file failed to parse.

    ``position`` is the zero-based offset of the offending character and
    ``expected`` names the tokens that would have been accepted there.
    """

    def __init__(self, message, text=None, position=None, expected=None):
        detail = message
        if position is not None:
            detail = f"{message} at position {position}"
        if expected:
            detail = f"{detail} (expected {expected})"
        super().__init__(detail)
        self.text = text
        self.position = position
        self.expected = expected
