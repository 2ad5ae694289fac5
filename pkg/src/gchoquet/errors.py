"""Exception hierarchy.

Every error raised by the library derives from :class:`GChoquetError`. The
three intermediate classes map onto the CLI exit codes (parse, validation,
precondition).
"""


class GChoquetError(Exception):
    """Base class for all library errors."""


class ParseError(GChoquetError):
    """Malformed input (bad JSON, bad number literal, wrong shape)."""


class ValidationError(GChoquetError):
    """Input parsed but violates a structural invariant."""


class PreconditionError(GChoquetError):
    """Valid input that does not meet an operation's preconditions."""


class MissingEmptySet(ValidationError):
    pass


class MissingFullSet(ValidationError):
    pass


class OutOfRangeIndex(ValidationError):
    pass


class NonZeroEmptySet(ValidationError):
    pass


class NegativeValue(ValidationError):
    pass


class ZeroFullSet(ValidationError):
    pass


class MonotonicityViolation(ValidationError):
    def __init__(self, smaller, larger, message=None):
        self.smaller = smaller
        self.larger = larger
        if message is None:
            from gchoquet.core import format_set

            message = f"{format_set(smaller)} ⊆ {format_set(larger)}"
        super().__init__(message)


class GapOrOverlap(ValidationError):
    pass


class DivergentIntegral(ValidationError):
    pass


class SetNotInCollection(ValidationError):
    pass


class NegativeComponent(ValidationError):
    pass


class DomainMismatch(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class BadLevels(ValidationError):
    pass


class ZeroDivision(ValidationError):
    """A normalization column would divide by zero."""


class PreconditionViolated(PreconditionError):
    pass


class MeasureNotOnPowerset(PreconditionError):
    pass


class InconsistentTargets(PreconditionError):
    pass
