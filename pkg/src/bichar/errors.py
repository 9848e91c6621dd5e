"""Exception types shared across the package."""


class BicharError(Exception):
    """Base class for domain errors raised by this package."""


class NonUnitConstantTerm(BicharError):
    pass


class SignatureMismatch(BicharError):
    pass


class NoSquareRoot(BicharError):
    """A diagonal grouplike value is not the square of a rational."""

    def __init__(self, index: int):
        # index is 1-based, matching the a1, a2, ... generator names
        self.index = index
        super().__init__(f"NoSquareRoot({index})")


class NonConstantGrouplikeValue(BicharError):
    pass


class NotSymmetric(BicharError):
    pass


class ModeParityMismatch(BicharError):
    pass


class TwistedWordHasNoZeroEvaluation(BicharError):
    pass


class ParseError(BicharError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownGenerator(BicharError):
    pass


class ConfigError(BicharError):
    pass
