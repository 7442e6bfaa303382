"""Exception hierarchy shared by the library and the CLI."""


class AdlvError(Exception):
    """Base class for all library errors."""


class NotationError(AdlvError):
    """Malformed textual input (element words, descriptors, config values).

    Carries the character offset of the offending token when known.
    """

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position

    def __str__(self) -> str:
        msg = super().__str__()
        if self.position is not None:
            return f"at char {self.position}: {msg}"
        return msg


class CapExceeded(AdlvError):
    """An enumeration would exceed a configured size cap."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


class UnsupportedGeometry(AdlvError):
    """Operation requires a geometry the system does not have (e.g. rank-2 rendering)."""


class InternalCheckError(AdlvError):
    """A postcondition that is mathematically guaranteed failed; indicates a bug."""
