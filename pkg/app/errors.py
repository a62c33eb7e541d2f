from typing import Optional


class NegIndexError(Exception):
    """
    Base error for the library and CLI.
    Carries the process exit code the CLI reports and a human-readable detail.
    """

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ParseError(NegIndexError):
    """Malformed word or polynomial text. Position is a 0-based character offset."""

    exit_code = 2

    def __init__(self, detail: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        super().__init__(detail)

    def annotated(self) -> str:
        """Return the message with a caret under the offending character."""
        if not self.text:
            return self.detail
        return f"{self.detail}\n  {self.text}\n  {' ' * self.position}^"


class ConfigurationError(NegIndexError):
    exit_code = 2


class DomainError(NegIndexError):
    """Input is well-formed but outside the domain of the requested operation."""

    exit_code = 3


class KernelElementError(DomainError):
    """The polynomial lies in ker H⁻ = ker Li⁻, so its asymptotic profile is undefined."""


class VerificationFailure(NegIndexError):
    exit_code = 1

    def __init__(self, detail: str, report=None):
        super().__init__(detail)
        self.report = report


class InexactDivisionError(ArithmeticError):
    # Raised when a division that must be exact leaves a remainder: an internal bug,
    # never a user-facing domain error.
    pass
