"""Exception types shared across the toolkit."""

from __future__ import annotations


class UedsError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(UedsError):
    """Malformed .gr input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotStarForest(UedsError):
    """The given edge set does not induce a disjoint union of stars."""


class CoverViolation(UedsError):
    """Endpoints of the given matching do not cover every edge."""


class InstanceTooLarge(UedsError):
    """Instance exceeds the configured limit for exhaustive enumeration."""


class IsolatedVertexPresent(UedsError):
    """Vertex coloring requires a graph without isolated vertices."""


class PreconditionViolated(UedsError):
    """A reduction rule was invoked while a lower-numbered rule still applies."""


class NotACover(UedsError):
    """The vertex set handed to the decomposition builder misses an edge."""


class DecompositionFormatError(UedsError):
    """Malformed .td input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidDecomposition(UedsError):
    """A (nice) tree decomposition failed validation."""


class BagMismatch(UedsError):
    """Join children disagree on the bag."""


class WidthCapExceeded(UedsError):
    """Decomposition is wider than the configured safety cap."""


class GenSpecError(UedsError):
    """Invalid instance-generator specification."""
