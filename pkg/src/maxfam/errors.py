"""Exception hierarchy shared by every module in the package."""


class MaxfamError(Exception):
    """Base class for all errors raised by maxfam."""


class InvalidParameter(MaxfamError, ValueError):
    """An input violates a documented precondition."""


class UnsupportedQ(InvalidParameter):
    """q is a valid odd prime power but d = (q+1)/2 is even."""


class InvalidIndex(InvalidParameter):
    """A curve index violates gcd(i(i+1), d) = 1."""


class DomainError(MaxfamError, ArithmeticError):
    """Division by zero or a non-positive power of zero in a finite field."""


class InternalInconsistency(MaxfamError, RuntimeError):
    """Two independent computations that must agree did not.

    Raised only when a proven identity fails, which means a transcription bug.
    """


class NotFound(MaxfamError, LookupError):
    """A bounded search (e.g. for the order of a map) came up empty."""


class CaseNotApplicable(MaxfamError, LookupError):
    """A subfield case was requested for an index that does not satisfy its hypothesis."""
