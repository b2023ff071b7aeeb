"""Exception hierarchy shared by every module of the package."""


class CyclotomicError(Exception):
    """Base class for all package errors."""


class PreconditionViolated(CyclotomicError, ValueError):
    """An input violates an operation's stated hypothesis."""


class NotInvertible(PreconditionViolated):
    pass


class InvalidPrimes(PreconditionViolated):
    pass


class OutOfRange(PreconditionViolated):
    pass


class HypothesisViolated(PreconditionViolated):
    pass


class SearchOverflow(CyclotomicError):
    pass


class TooLarge(CyclotomicError):
    pass


class ScanTooLarge(TooLarge):
    pass


class InvariantViolation(CyclotomicError):
    """A mathematical invariant failed on computed data; indicates a bug."""


class IntervalMiss(InvariantViolation):
    pass


class InexactDivision(InvariantViolation):
    pass


class RangeViolation(InvariantViolation):
    pass


class PropositionMismatch(InvariantViolation):
    pass


class CertificationFailed(CyclotomicError):
    """Raised when a constructed instance does not reach its predicted extremes."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class TableMismatch(CertificationFailed):
    def __init__(self, row, message, certificate=None):
        super().__init__(f"{row}: {message}", certificate)
        self.row = row
