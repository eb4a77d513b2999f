"""Exception hierarchy shared by every module in the package."""


class DigitSumsError(ValueError):
    """Base class; subclasses ValueError so callers can catch broadly."""


class InvalidBaseError(DigitSumsError):
    pass


class MalformedExpansionError(DigitSumsError):
    pass


class UndefinedValuationError(DigitSumsError):
    pass


class InvalidPrimeError(DigitSumsError):
    pass


class IncompleteFactorizationError(DigitSumsError):
    def __init__(self, value, cofactor, limit):
        self.value = value
        self.cofactor = cofactor
        self.limit = limit
        super().__init__(
            f"cannot factor {value} completely: cofactor {cofactor} has a prime factor above {limit}"
        )


class RationalityError(DigitSumsError):
    """log a / log b is rational, so the requested construction does not exist."""

    def __init__(self, a, b, u, v):
        self.a, self.b, self.u, self.v = a, b, u, v
        super().__init__(f"log {a} / log {b} is rational: {a}^{v} = {b}^{u}")


class HypothesisError(DigitSumsError):
    """An input violates the hypothesis of the statement being certified."""


class PreconditionError(DigitSumsError):
    pass


class ResourceLimitError(DigitSumsError):
    pass


class DomainError(DigitSumsError):
    pass


class InvalidParamsError(DigitSumsError):
    pass


class PrecisionEscalation(DigitSumsError):
    """The working precision is too low to decide a comparison; retry with more bits."""

    def __init__(self, what, precision):
        self.what = what
        self.precision = precision
        super().__init__(f"{what}: undecided at {precision} bits")


class IndeterminateError(DigitSumsError):
    """Raised once the precision cap is reached without a decision."""


class ExprSyntaxError(DigitSumsError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")


class BFileParseError(DigitSumsError):
    def __init__(self, message, line_number):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class TransportError(DigitSumsError):
    pass


class CoverageError(DigitSumsError):
    def __init__(self, sequence_id, missing):
        self.sequence_id = sequence_id
        self.missing = list(missing)
        shown = ", ".join(map(str, self.missing[:10]))
        more = "" if len(self.missing) <= 10 else f" (+{len(self.missing) - 10} more)"
        super().__init__(f"{sequence_id} b-file does not cover indices {shown}{more}")
