"""Exception hierarchy shared by all amplekit modules."""


class AmplekitError(Exception):
    """Base class for all errors raised by amplekit."""


class DomainError(AmplekitError):
    """A coordinate set or domain width is out of range."""


class EmptyClassError(DomainError):
    """An operation produced an empty concept class (e.g. complement of a full cube)."""


class ContractError(AmplekitError):
    """A documented precondition of an operation was violated by the caller."""


class IntegrityError(AmplekitError):
    """An internal guarantee failed; indicates a bug or corrupted input structure."""


class ParseError(AmplekitError):
    """A file or wire-format string could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotConnectedError(AmplekitError):
    """Two structures that should be joined by a path/gallery are not connected."""


class DecodeError(AmplekitError):
    """A compressed set could not be decoded back to a concept."""


class OrderingValidationError(AmplekitError):
    """An ordering or shelling failed validation; carries the first bad index."""

    def __init__(self, message, index):
        super().__init__(f"{message} (first violation at index {index})")
        self.index = index
