"""Typed errors shared across the workbench."""


class MvTensorError(Exception):
    """Base class for all workbench errors."""


class DomainMismatch(MvTensorError):
    """Two point functions live on different point sets."""


class CapExceeded(MvTensorError):
    """A closure enumeration grew past the configured carrier cap.

    This signals a genuinely infinite (or merely huge) closure, e.g. the
    product closure of {1/2}, not a bug.
    """

    def __init__(self, cap, size=None):
        self.cap = cap
        self.size = size
        super().__init__(f"closure exceeded cap {cap}")


class NotInCarrier(MvTensorError):
    """An element is not a member of the algebra it was used with."""


class NotWellDefined(MvTensorError):
    """A map extension violated an operation instance.

    Carries the offending instance for diagnosis.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class EmbeddingFailure(MvTensorError):
    """A map that must be injective (or a projection that must be onto) is not."""


class LevelOverflow(MvTensorError):
    """A tower product needs a level beyond the truncation bound."""

    def __init__(self, needed, max_level):
        self.needed = needed
        self.max_level = max_level
        super().__init__(f"level {needed} exceeds tower truncation {max_level}")


class ScalarUnsupported(MvTensorError):
    """A scalar multiple leaves the carrier at the current level."""


class SignatureViolation(MvTensorError):
    """An operation is not available in the declared signature."""


class ParseError(MvTensorError):
    """Malformed term text."""


class GridTooLarge(MvTensorError):
    """A tabulation grid exceeds the configured point bound."""


class SchemaError(MvTensorError):
    """Invalid JSON payload; carries a JSON-pointer-ish location."""

    def __init__(self, message, location=""):
        self.location = location
        super().__init__(f"{message} (at {location or '/'})")


class NotUnitPreserving(MvTensorError):
    """A group map does not send the strong unit to the strong unit."""


class UsageError(MvTensorError):
    """Bad command-line arguments."""
