"""Exception hierarchy shared by every wittkit module."""


class WittError(Exception):
    """Base class for all domain errors raised by wittkit."""


class RingMismatch(WittError):
    pass


class DomainError(WittError):
    """A value is outside the domain an operation accepts."""


class NonIntegralGhost(DomainError):
    """A ghost vector is not the image of any Witt vector over the ring."""


class NotEffective(DomainError):
    pass


class InvalidComplex(DomainError):
    pass


class BudgetExceeded(DomainError):
    pass


class ParseError(WittError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
