"""Exception hierarchy.  Refusals carry the witness that justifies them."""


class HomAltError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(HomAltError, ValueError):
    pass


class SingularMatrixError(HomAltError, ValueError):
    pass


class MalformedRationalError(HomAltError, ValueError):
    pass


class ParseError(HomAltError, ValueError):
    """Malformed document; ``locus`` names the offending line or field."""

    def __init__(self, message: str, locus: str = ""):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.locus = locus


class WitnessedRefusal(HomAltError, ValueError):
    """An operation refused because a precondition fails on a concrete witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAMorphismError(WitnessedRefusal):
    pass


class NotAnIdealError(WitnessedRefusal):
    pass


class NotIdempotentError(WitnessedRefusal):
    pass


class CompatibilityError(WitnessedRefusal):
    pass
