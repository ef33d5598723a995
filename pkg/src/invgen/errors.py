class InvgenError(Exception):
    """Base class for errors raised by this package."""


class SizeError(InvgenError):
    """A configured enumeration cap would be exceeded."""


class CapabilityError(InvgenError):
    """Requested data lies outside what the engine or a loaded atlas supports."""


class DomainError(InvgenError, ValueError):
    """Input is outside the mathematical domain of the operation."""


class AtlasFormatError(InvgenError):
    """An atlas file is malformed or fails its invariants."""


class ParseError(InvgenError, ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column
