"""Exception hierarchy shared by every module."""

from __future__ import annotations


class PartialGroupError(Exception):
    """Base class for all errors raised by this package."""

    kind = "error"


class CarrierMismatchError(PartialGroupError):
    kind = "carrier-mismatch"


class UnknownElementError(PartialGroupError, KeyError):
    kind = "unknown-element"

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class UndefinedProductError(PartialGroupError):
    kind = "undefined-product"


class ConjugationUndefinedError(PartialGroupError):
    kind = "conjugation-undefined"


class InvalidInputError(PartialGroupError, ValueError):
    kind = "invalid-input"


class TooLargeError(PartialGroupError):
    kind = "too-large"


class InvalidActionError(PartialGroupError):
    kind = "invalid-action"


class IncompatibleIsosError(PartialGroupError):
    kind = "incompatible-isos"


class DomainBoundError(PartialGroupError):
    """Membership was asked for a word longer than an explicit domain stores."""

    kind = "beyond-bound"


class HypothesisError(PartialGroupError):
    """A standing hypothesis of a product construction fails.

    ``bullet`` names the violated condition and ``counterexample`` holds the
    offending data.
    """

    kind = "hypothesis-failed"

    def __init__(self, bullet: str, message: str, counterexample=None):
        super().__init__(f"{bullet}: {message}")
        self.bullet = bullet
        self.counterexample = counterexample


class HypothesisNotMetError(PartialGroupError):
    kind = "hypothesis-not-met"


class VerificationError(PartialGroupError):
    """A structure failed verification; ``report`` carries the evidence."""

    kind = "verification-failed"

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


class FixtureInvalidError(VerificationError):
    kind = "fixture-invalid"


class DocumentError(PartialGroupError):
    """Parse or schema error in an input document."""

    kind = "document-error"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
