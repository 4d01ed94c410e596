"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`SurgeqError`, so callers (and the CLI) can catch one type.
"""


class SurgeqError(Exception):
    pass


class SingularMatrixError(SurgeqError, ArithmeticError):
    pass


class NotSymmetricError(SurgeqError, ValueError):
    pass


class DimensionMismatchError(SurgeqError, ValueError):
    pass


class NotCyclicError(SurgeqError, ValueError):
    pass


class DegenerateFormError(SurgeqError, ValueError):
    pass


class NotPureError(SurgeqError, ValueError):
    pass


class IndexOutOfRangeError(SurgeqError, IndexError):
    pass


class InvalidLensParameters(SurgeqError, ValueError):
    pass


class PresentationError(SurgeqError, ValueError):
    """A framed link violates one of its own invariants."""


class ParseError(SurgeqError, ValueError):
    pass


class PreconditionViolated(SurgeqError, ValueError):
    """An operation was called on input outside its domain.

    ``condition`` names the failed condition so the CLI can report it.
    """

    condition = "precondition"

    def __init__(self, message, condition=None):
        super().__init__(message)
        if condition is not None:
            self.condition = condition


class NotZeroFramed(PreconditionViolated):
    condition = "zero-framed"


class LinkingNonzero(PreconditionViolated):
    condition = "linking-numbers-vanish"


class NoLongitudeData(PreconditionViolated):
    condition = "longitude-data"
