"""Exception types shared across the package."""


class SpecsparseError(ValueError):
    """Base class for all errors raised by this package."""


class GraphFormatError(SpecsparseError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IsolatedVertexError(SpecsparseError):
    """An operation that requires positive degrees hit an isolated vertex."""


class DenseCapError(SpecsparseError):
    """A dense O(n^3) operation was requested above the configured cap."""


class WorkCapError(SpecsparseError):
    """Exact trace computation would exceed the configured work budget."""
