"""Regions of interest: outer boundaries with exclusion-zone holes.

A flat collection of closed chains is sorted into regions by containment
depth. A chain enclosed by an odd number of other chains is a hole of its
immediate container; even depth means it bounds a region of its own (islands
inside holes become independent regions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import AmbiguousNesting, InvalidGeometry
from .geometry import (
    EPS_REL,
    Location,
    Orientation,
    Ring,
    RotationFrame,
    bbox_diagonal,
    ring_contains_point,
    rotate,
    segments_intersect,
)


def _rings_cross(r1: Ring, r2: Ring, eps: float) -> bool:
    x0, y0, x1, y1 = r1.bbox()
    u0, v0, u1, v1 = r2.bbox()
    if x1 < u0 - eps or u1 < x0 - eps or y1 < v0 - eps or v1 < y0 - eps:
        return False
    for a, b in r1.edges():
        for c, d in r2.edges():
            if segments_intersect(a, b, c, d, eps):
                return True
    return False


@dataclass(frozen=True)
class ChainSet:
    """Closed chains in arbitrary order, as read from a flat input."""

    chains: tuple[Ring, ...]

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(self.chains))
        if not self.chains:
            raise InvalidGeometry("empty chain set")
        eps = self.eps
        for i, j in itertools.combinations(range(len(self.chains)), 2):
            if _rings_cross(self.chains[i], self.chains[j], eps):
                raise InvalidGeometry(f"chains {i} and {j} intersect or touch")

    @property
    def eps(self) -> float:
        return EPS_REL * bbox_diagonal([p for r in self.chains for p in r.vertices])


@dataclass(frozen=True)
class RegionOfInterest:
    outer: Ring
    holes: tuple[Ring, ...] = field(default_factory=tuple)
    nesting_depth: int = 0

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))

    @property
    def eps(self) -> float:
        return EPS_REL * self.outer.diagonal()

    def rings(self) -> list[Ring]:
        return [self.outer, *self.holes]

    def area(self) -> float:
        return self.outer.area - sum(h.area for h in self.holes)

    def bbox(self) -> tuple[float, float, float, float]:
        return self.outer.bbox()

    def contains(self, p, eps: float | None = None) -> Location:
        """Classify ``p`` against the region (outer interior minus holes)."""
        eps = self.eps if eps is None else eps
        loc = ring_contains_point(self.outer, p, eps)
        if loc is not Location.INSIDE:
            return loc
        for h in self.holes:
            hl = ring_contains_point(h, p, eps)
            if hl is Location.ON_BOUNDARY:
                return hl
            if hl is Location.INSIDE:
                return Location.OUTSIDE
        return Location.INSIDE

    def edges(self):
        for r in self.rings():
            yield from r.edges()

    def transformed(self, frame: RotationFrame) -> "RegionOfInterest":
        return RegionOfInterest(
            rotate(frame, self.outer), tuple(rotate(frame, h) for h in self.holes), self.nesting_depth
        )

    def validate(self) -> "RegionOfInterest":
        eps = self.eps
        if self.outer.orientation is not Orientation.CCW:
            raise InvalidGeometry("outer ring must be counter-clockwise")
        for i, h in enumerate(self.holes):
            if h.orientation is not Orientation.CW:
                raise InvalidGeometry(f"hole {i} must be clockwise")
            if _rings_cross(self.outer, h, eps):
                raise InvalidGeometry(f"hole {i} touches or crosses the outer boundary")
            if ring_contains_point(self.outer, h.vertices[0], eps) is not Location.INSIDE:
                raise InvalidGeometry(f"hole {i} lies outside the outer boundary")
        for i, j in itertools.combinations(range(len(self.holes)), 2):
            hi, hj = self.holes[i], self.holes[j]
            if _rings_cross(hi, hj, eps):
                raise InvalidGeometry(f"holes {i} and {j} intersect or touch")
            if (
                ring_contains_point(hj, hi.vertices[0], eps) is not Location.OUTSIDE
                or ring_contains_point(hi, hj.vertices[0], eps) is not Location.OUTSIDE
            ):
                raise InvalidGeometry(f"holes {i} and {j} are nested")
        return self


def _lexmin(ring: Ring):
    return min(ring.vertices)


def region_from_rings(outer, holes=(), nesting_depth: int = 0) -> RegionOfInterest:
    """Build a validated region from explicitly separated rings.

    Orientation is normalized (outer CCW, holes CW) before validation.
    """
    outer = outer if isinstance(outer, Ring) else Ring(outer)
    holes = [h if isinstance(h, Ring) else Ring(h) for h in holes]
    eps = EPS_REL * outer.diagonal()
    roi = RegionOfInterest(
        outer.oriented(Orientation.CCW).with_eps(eps),
        tuple(sorted((h.oriented(Orientation.CW).with_eps(eps) for h in holes), key=_lexmin)),
        nesting_depth,
    )
    return roi.validate()


def containment_matrix(cs: ChainSet) -> np.ndarray:
    """``M[i, j]`` is True iff chain ``i`` lies strictly inside chain ``j``."""
    n = len(cs.chains)
    eps = cs.eps
    m = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            locs = {ring_contains_point(cs.chains[j], p, eps) for p in cs.chains[i].vertices}
            if Location.ON_BOUNDARY in locs:
                raise InvalidGeometry(f"chain {i} touches chain {j}")
            if len(locs) > 1:
                raise AmbiguousNesting(f"chain {i} is partly inside and partly outside chain {j}")
            m[i, j] = Location.INSIDE in locs
    return m


def classify_chains(cs: ChainSet) -> list[RegionOfInterest]:
    """Sort chains into regions by nesting parity.

    Returns regions ordered by nesting depth, then by lexicographically least
    outer vertex, so the result does not depend on input order.
    """
    m = containment_matrix(cs)
    depth = m.sum(axis=1)
    eps = cs.eps
    holes_of: dict[int, list[Ring]] = {}
    for i in range(len(cs.chains)):
        if depth[i] % 2 == 1:
            parents = [j for j in np.flatnonzero(m[i]) if depth[j] == depth[i] - 1]
            if len(parents) != 1:
                raise AmbiguousNesting(f"chain {i} has no unique immediate container")
            holes_of.setdefault(int(parents[0]), []).append(cs.chains[i])
    rois = []
    for i, ring in enumerate(cs.chains):
        if depth[i] % 2 == 0:
            holes = holes_of.get(i, [])
            rois.append(
                RegionOfInterest(
                    ring.oriented(Orientation.CCW).with_eps(eps),
                    tuple(sorted((h.oriented(Orientation.CW).with_eps(eps) for h in holes), key=_lexmin)),
                    int(depth[i]),
                )
            )
    rois.sort(key=lambda r: (r.nesting_depth, _lexmin(r.outer)))
    return rois
