"""Exception hierarchy shared across the package."""
from __future__ import annotations


class CurvelabError(Exception):
    """Base class for all curvelab errors."""


class ParameterError(CurvelabError):
    """Invalid user-facing parameters (CLI exit code 2)."""


class ConstructionError(CurvelabError):
    """A construction failed one of its certificates (CLI exit code 3)."""


class ResourceError(CurvelabError):
    """A degree/iteration cap was exceeded; never a silent truncation."""


class KernelError(CurvelabError):
    """Internal inconsistency between two independently computed answers."""


class ParseError(CurvelabError):
    """Malformed ideal file input."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
