"""Exceptions shared across the package."""


class ToricError(Exception):
    """Base class for all torikit errors."""


class ParseError(ToricError):
    """Malformed fan file.  Carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ShapeError(ToricError):
    """Incompatible vector/matrix dimensions."""


class PointednessError(ToricError):
    """Operation requires a cone with a vertex (no line contained in it)."""


class SmoothnessError(ToricError):
    """Operation requires a smooth fan."""


class CompletenessError(ToricError):
    """Operation requires a complete fan."""


class IncompatibleFamilyError(ToricError):
    """Character family violates the pairwise compatibility condition."""
