"""Sweep-line decomposition of a region into sweep-monotone cells.

The region is rotated so that flight lines are horizontal, then swept from
top to bottom. Split and merge events are vertices where the number of
boundary crossings of the sweep line changes and the region surrounds the
vertex (reflex vertices that are local extrema, including hole tops and
bottoms). The region is cut along the full horizontal line through each
event, clipped to the region interior, and the faces of the resulting planar
subdivision are the cells.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HorizontalEdgeDegeneracy, NumericalDegeneracy
from .geometry import Location, Point2D, Ring, RotationFrame, Segment
from .regions import RegionOfInterest

# relative shear used to break ties between vertices at equal height
EPS_SHEAR = 1e-7


@dataclass(frozen=True)
class SweepFrame:
    """Sweep direction and the world -> frame rotation that makes it horizontal.

    ``sweep_angle`` is in degrees in [0, 180). The rotation uses the
    representative of the sweep direction in (-90, 90], so frame +y maps to a
    world direction with non-negative y component.
    """

    sweep_angle: float
    rotation: RotationFrame

    @classmethod
    def from_sweep_angle(cls, sweep_deg: float) -> "SweepFrame":
        a = math.fmod(sweep_deg, 180.0)
        if a < 0:
            a += 180.0
        if a >= 180.0:
            a -= 180.0
        rep = a if a <= 90.0 else a - 180.0
        return cls(a, RotationFrame(-math.radians(rep)))

    def to_frame(self, p) -> Point2D:
        return Point2D(*self.rotation.apply_xy(p[0], p[1]))

    def to_world(self, p) -> Point2D:
        return Point2D(*self.rotation.inverse().apply_xy(p[0], p[1]))


def sweep_angle_from_wind(wind_direction: float) -> SweepFrame:
    """Sweep lines run perpendicular to the wind."""
    return SweepFrame.from_sweep_angle(wind_direction + 90.0)


class EventKind(enum.Enum):
    SPLIT = "Split"
    MERGE = "Merge"


@dataclass(frozen=True)
class EventPoint:
    y: float
    kind: EventKind
    location: Point2D


@dataclass(frozen=True)
class Cell:
    boundary: Ring
    partition_edges: tuple[Segment, ...] = ()
    source_roi: RegionOfInterest | None = field(default=None, repr=False, compare=False)


def crossing_count(ring_pts, y: float) -> int:
    """Number of boundary edges crossing the horizontal line at ``y`` (half-open rule)."""
    n = len(ring_pts)
    count = 0
    for i in range(n):
        a = ring_pts[i]
        b = ring_pts[(i + 1) % n]
        if (a[1] > y) != (b[1] > y):
            count += 1
    return count


def monotone_levels(ring: Ring, extra=()) -> list[float]:
    """Midpoints between consecutive distinct vertex heights, plus ``extra`` levels."""
    ys = sorted({p.y for p in ring.vertices})
    levels = [0.5 * (a + b) for a, b in zip(ys, ys[1:])]
    lo, hi = ys[0], ys[-1]
    levels.extend(y for y in extra if lo < y < hi)
    return levels


def is_monotone(ring: Ring, extra=()) -> bool:
    """Exact check that every tested horizontal line meets the ring in exactly two points."""
    pts = ring.vertices
    return all(crossing_count(pts, y) == 2 for y in monotone_levels(ring, extra))


def _sheared(froi: RegionOfInterest):
    x0, y0, x1, y1 = froi.bbox()
    width = max(x1 - x0, 1e-300)
    k = EPS_SHEAR * (y1 - y0) / width
    return lambda p: (p[0], p[1] + k * (p[0] - x0))


def find_events(roi: RegionOfInterest, frame: SweepFrame) -> list[EventPoint]:
    """Split and merge events of ``roi`` in sweep order (top to bottom).

    Crossing counts are taken just above and just below every vertex on a
    sheared copy of the region, so no edge is exactly horizontal.
    """
    froi = roi.transformed(frame.rotation)
    shear = _sheared(froi)
    verts = []  # (y', x, prev', cur', next', frame point)
    edge_y = []
    for ring in froi.rings():
        pts = ring.vertices
        sp = [shear(p) for p in pts]
        n = len(pts)
        for i in range(n):
            if sp[i][1] == sp[(i + 1) % n][1]:
                raise HorizontalEdgeDegeneracy(f"edge at {pts[i]} stays horizontal after shearing")
            verts.append((sp[i][1], pts[i].x, sp[i - 1], sp[i], sp[(i + 1) % n], pts[i]))
            edge_y.append((sp[i][1], sp[(i + 1) % n][1]))
    verts.sort(key=lambda v: (-v[0], v[1]))
    ey = np.asarray(edge_y)
    levels = np.unique(ey[:, 0])
    if len(levels) > 1:
        gap = 0.5 * float(np.min(np.diff(levels)))
    else:
        gap = 1.0
    ys = np.asarray([v[0] for v in verts])
    probes = np.concatenate([ys + gap, ys - gap])
    counts = ((ey[None, :, 0] > probes[:, None]) != (ey[None, :, 1] > probes[:, None])).sum(axis=1)
    above, below = counts[: len(verts)], counts[len(verts) :]
    _, multiplicity = np.unique(ys, return_counts=True)
    shared = set(np.unique(ys)[multiplicity > 1].tolist())

    events = []
    for k, (yp, _, prv, cur, nxt, p) in enumerate(verts):
        if yp in shared:
            # several vertices on one level: count only this vertex's own edges
            change = (prv[1] < yp) + (nxt[1] < yp) - (prv[1] > yp) - (nxt[1] > yp)
        else:
            change = int(below[k]) - int(above[k])
        if change == 0:
            continue
        turn = (cur[0] - prv[0]) * (nxt[1] - cur[1]) - (cur[1] - prv[1]) * (nxt[0] - cur[0])
        if turn >= 0:
            continue  # convex start/end vertex: the region begins or ends here
        kind = EventKind.SPLIT if change > 0 else EventKind.MERGE
        events.append(EventPoint(p.y, kind, p))
    return events


class _Planar:
    """Minimal planar graph with interior-on-the-left half-edges."""

    def __init__(self):
        self.nbrs: dict[Point2D, set[Point2D]] = {}
        self.half: set[tuple[Point2D, Point2D]] = set()

    def add(self, a: Point2D, b: Point2D, both: bool) -> None:
        self.nbrs.setdefault(a, set()).add(b)
        self.nbrs.setdefault(b, set()).add(a)
        self.half.add((a, b))
        if both:
            self.half.add((b, a))

    def faces(self) -> list[list[Point2D]]:
        order = {}
        for v, ns in self.nbrs.items():
            order[v] = sorted(ns, key=lambda w: math.atan2(w.y - v.y, w.x - v.x))
        used = set()
        out = []
        for start in sorted(self.half):
            if start in used:
                continue
            face = []
            h = start
            for _ in range(len(self.half) + 1):
                used.add(h)
                face.append(h[0])
                u, v = h
                ring = order[v]
                w = ring[ring.index(u) - 1]
                h = (v, w)
                if h == start:
                    break
                if h not in self.half or h in used:
                    raise NumericalDegeneracy(f"inconsistent subdivision at {v}")
            else:
                raise NumericalDegeneracy("face tracing did not close")
            out.append(face)
        return out


def _cut_level(froi: RegionOfInterest, c: float, eps: float, splits: dict) -> list[tuple[Point2D, Point2D]]:
    """Interior intervals of the line ``y = c``; records boundary points to insert."""
    marks: list[tuple[float, Point2D, tuple | None]] = []
    for ri, ring in enumerate(froi.rings()):
        pts = ring.vertices
        n = len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            if abs(a.y - c) <= eps:
                marks.append((a.x, a, None))
            if abs(a.y - c) <= eps or abs(b.y - c) <= eps:
                continue
            if (a.y > c) != (b.y > c):
                x = a.x + (c - a.y) * (b.x - a.x) / (b.y - a.y)
                marks.append((x, Point2D(x, c), (ri, i)))
    marks.sort(key=lambda m: (m[0], m[2] is not None))
    merged: list[tuple[float, Point2D, tuple | None]] = []
    for m in marks:
        if merged and abs(m[0] - merged[-1][0]) <= eps:
            if merged[-1][2] is not None and m[2] is None:
                merged[-1] = m  # an existing vertex wins over a crossing at the same spot
            continue
        merged.append(m)
    cuts = []
    for left, right in zip(merged, merged[1:]):
        mid = (0.5 * (left[0] + right[0]), c)
        if froi.contains(mid, eps) is Location.INSIDE:
            for m in (left, right):
                if m[2] is not None:
                    splits.setdefault(m[2], set()).add(m[1])
            cuts.append((left[1], right[1]))
    return cuts


def partition_cells(roi: RegionOfInterest, events: list[EventPoint], frame: SweepFrame) -> list[Cell]:
    """Cut the region along every event line and return the faces as cells.

    Cells are in frame coordinates, ordered top to bottom, then left to right.
    """
    froi = roi.transformed(frame.rotation)
    eps = froi.eps
    if not events:
        return [Cell(froi.outer, (), roi)]
    levels: list[float] = []
    for y in sorted(e.y for e in events):
        if not levels or y - levels[-1] > eps:
            levels.append(y)
    splits: dict[tuple[int, int], set[Point2D]] = {}
    cuts = []
    for c in levels:
        cuts.extend(_cut_level(froi, c, eps, splits))

    g = _Planar()
    for ri, ring in enumerate(froi.rings()):
        pts = ring.vertices
        n = len(pts)
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            inner = sorted(splits.get((ri, i), ()), key=lambda p: (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y))
            chain = [a, *inner, b]
            for p, q in zip(chain, chain[1:]):
                g.add(p, q, both=False)
    for p, q in cuts:
        g.add(p, q, both=True)

    cut_set = {frozenset(c) for c in cuts}
    cells = []
    for face in g.faces():
        ring = Ring(face, eps=eps)
        if ring.signed_area <= 0:
            raise NumericalDegeneracy("decomposition produced a negatively oriented face")
        m = len(face)
        parts = tuple(
            Segment(face[i], face[(i + 1) % m]) for i in range(m) if frozenset((face[i], face[(i + 1) % m])) in cut_set
        )
        cells.append(Cell(ring, parts, roi))
    cells.sort(key=lambda c: (-c.boundary.bbox()[3], c.boundary.bbox()[0]))
    return cells
