"""Error type shared by all modules."""

from __future__ import annotations


class AddactError(Exception):
    """Domain error carrying a stable machine-readable code."""

    def __init__(self, code: str, message: str = "") -> None:
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}")


class MalformedInput(AddactError):
    """Raised when an input document or string cannot be parsed."""

    def __init__(self, message: str) -> None:
        super().__init__("MALFORMED_INPUT", message)
