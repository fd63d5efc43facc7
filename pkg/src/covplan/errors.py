"""Exception hierarchy for the coverage planner.

Every error carries the name of the module that raised it so that the CLI can
report provenance, and a ``category`` that selects the process exit code
(``"input"`` -> 2, ``"geometry"`` -> 3).
"""

from __future__ import annotations


class CovplanError(Exception):
    """Base class for all planner errors."""

    module = "covplan"
    category = "geometry"

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "module": self.module,
            "category": self.category,
            "message": str(self),
        }


class InvalidGeometry(CovplanError, ValueError):
    """Input geometry violates a structural invariant (non-finite, self-intersecting, ...)."""

    module = "geometry"
    category = "input"


class AmbiguousNesting(CovplanError):
    module = "regions"
    category = "input"


class NumericalDegeneracy(CovplanError):
    module = "offset"


class RegionCollapsed(CovplanError):
    module = "offset"

    def __init__(self, message: str, indices: tuple[int, ...] = (0,)):
        super().__init__(message)
        self.indices = tuple(indices)


class RegionSplit(CovplanError):
    """The inward offset of an outer boundary broke into several pieces."""

    module = "offset"

    def __init__(self, message: str, pieces: int):
        super().__init__(message)
        self.pieces = pieces


class OffsetOverlap(CovplanError):
    module = "offset"

    def __init__(self, message: str, indices: tuple[int, ...]):
        super().__init__(message)
        self.indices = tuple(indices)


class HorizontalEdgeDegeneracy(CovplanError):
    module = "decompose"


class NonSimpleUnion(CovplanError):
    module = "merge"


class InvalidOverlap(CovplanError, ValueError):
    module = "paths"
    category = "input"


class EmptyPath(CovplanError):
    module = "paths"


class UnroutableTransition(CovplanError):
    module = "paths"


class ParseError(CovplanError):
    module = "formats"
    category = "input"


class OpenChain(ParseError):
    pass


class ConfigError(CovplanError, ValueError):
    module = "pipeline"
    category = "input"


class IoError(CovplanError, OSError):
    module = "formats"
    category = "input"
