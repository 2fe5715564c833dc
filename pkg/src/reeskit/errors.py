"""Exceptions raised by reeskit."""


class ReesKitError(ValueError):
    """Base class of all reeskit errors."""


class DomainError(ReesKitError):
    """The input is mathematically invalid, e.g. an ill-defined map or a ring mismatch."""


class VerificationError(ReesKitError):
    """An internal cross-check between two independent computations failed."""


class ScriptError(ReesKitError):
    """Syntax or name resolution error in a session script."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"
