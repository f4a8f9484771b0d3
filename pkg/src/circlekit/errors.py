"""Exception taxonomy shared across the package.

Exit-code mapping used by the CLI lives in ``circlekit.cli``; library code
raises these directly and never calls ``sys.exit``.
"""

from __future__ import annotations

__all__ = [
    "CircleKitError",
    "InvalidVertexError",
    "NotAnEdgeError",
    "OrbitCapExceeded",
    "BoundExceeded",
    "RlcValidityError",
    "PreconditionError",
    "TheoremViolation",
    "EmbeddingError",
    "WordParseError",
    "GraphParseError",
]


class CircleKitError(Exception):
    """Base class for all package-specific errors."""


class InvalidVertexError(CircleKitError):
    """A vertex label was used that the graph does not contain."""


class NotAnEdgeError(CircleKitError):
    """An operation required an edge between two vertices that are not adjacent."""


class OrbitCapExceeded(CircleKitError):
    """An orbit enumeration grew past the caller-supplied cap."""

    def __init__(self, cap: int):
        super().__init__(f"orbit size exceeded cap {cap}")
        self.cap = cap


class BoundExceeded(CircleKitError):
    """Input is larger than the configured desk-scale bound for this operation."""


class RlcValidityError(CircleKitError):
    """A multiset failed the validity conditions for r-local complementation.

    ``condition`` names the specific violated requirement
    (``"independence"`` or ``"incidence"``).
    """

    def __init__(self, condition: str, detail: str = ""):
        msg = f"invalid r-local complementation instance: {condition} violated"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.condition = condition


class PreconditionError(CircleKitError):
    """A documented precondition of an operation does not hold."""


class TheoremViolation(CircleKitError):
    """A property guaranteed by the underlying theory failed on a concrete instance.

    This is the loud alarm: it should never trigger on valid inputs and
    indicates either a bug or a genuinely falsifying instance.
    """


class EmbeddingError(CircleKitError):
    """A rotation system does not describe a sphere embedding (wrong genus)."""


class WordParseError(CircleKitError):
    """A chord-diagram word failed to parse; ``offset`` points at the bad token."""

    def __init__(self, message: str, offset: int = -1):
        super().__init__(message)
        self.offset = offset


class GraphParseError(CircleKitError):
    """A serialized graph failed to parse; ``offset`` is the bad byte position."""

    def __init__(self, message: str, offset: int = -1):
        super().__init__(message)
        self.offset = offset
