"""Straight-skeleton offsetting by kinetic wavefront simulation.

Every edge of a ring translates along its interior normal at unit speed; the
wavefront vertices slide along the angle bisectors of their two edges. The
simulation repeatedly finds the earliest topological event and applies it:

* edge collapse: an edge shrinks to zero length and its two end vertices fuse;
* split: a reflex vertex runs into a non-adjacent edge and the wavefront
  polygon is cut in two.

Vertex positions are always recomputed from their two supporting edge lines
(``n . x = c + t``), so error does not accumulate along a trace. Outward
offsets run the same engine on the reversed ring, whose "interior" is the
unbounded exterior of the original.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

from .errors import InvalidGeometry, NumericalDegeneracy, OffsetOverlap, RegionCollapsed, RegionSplit
from .geometry import (
    EPS_REL,
    Location,
    Orientation,
    Point2D,
    Ring,
    Segment,
    _shoelace,
    ring_contains_point,
)
from .regions import RegionOfInterest, _rings_cross

# events closer than this in time are simultaneous and ordered by location
TIME_TIE = 1e-9
# |sin| of the angle between two edges below which they count as parallel
PARALLEL_TOL = 1e-10


class Direction(enum.Enum):
    INWARD = "Inward"
    OUTWARD = "Outward"


class EventKind(enum.Enum):
    EDGE_COLLAPSE = "EdgeCollapse"
    SPLIT = "Split"


@dataclass(frozen=True)
class OffsetSpec:
    distance: float
    direction: Direction = Direction.INWARD

    def __post_init__(self):
        if not math.isfinite(self.distance) or self.distance < 0:
            raise InvalidGeometry(f"offset distance must be finite and >= 0, got {self.distance}")


@dataclass(frozen=True)
class SkeletonEvent:
    time: float
    kind: EventKind
    location: Point2D


@dataclass(frozen=True)
class StraightSkeleton:
    source: Ring
    direction: Direction
    arcs: tuple[Segment, ...]
    events: tuple[SkeletonEvent, ...]
    # (start time, end time) of each arc, parallel to ``arcs``
    arc_times: tuple[tuple[float, float], ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "direction": self.direction.value,
            "events": [
                {"time": e.time, "kind": e.kind.value, "x": e.location.x, "y": e.location.y} for e in self.events
            ],
            "arcs": [
                {"x0": s.a.x, "y0": s.a.y, "x1": s.b.x, "y1": s.b.y, "t0": t0, "t1": t1}
                for s, (t0, t1) in zip(self.arcs, self.arc_times)
            ],
        }


class _Edge:
    __slots__ = ("nx", "ny", "dx", "dy", "c")

    def __init__(self, a, b):
        dx, dy = b[0] - a[0], b[1] - a[1]
        ln = math.hypot(dx, dy)
        self.dx, self.dy = dx / ln, dy / ln
        self.nx, self.ny = -self.dy, self.dx
        self.c = self.nx * a[0] + self.ny * a[1]


class _Vertex:
    __slots__ = ("e_in", "e_out", "x", "y", "t", "vx", "vy", "ox", "oy", "ot")

    def __init__(self, e_in: int, e_out: int, x: float, y: float, t: float):
        self.e_in = e_in
        self.e_out = e_out
        self.x, self.y, self.t = x, y, t
        self.ox, self.oy, self.ot = x, y, t
        self.vx = self.vy = 0.0

    def pos(self, t: float) -> tuple[float, float]:
        dt = t - self.t
        return self.x + dt * self.vx, self.y + dt * self.vy


class _Wavefront:
    def __init__(self, pts: list[Point2D], eps: float):
        n = len(pts)
        self.eps = eps
        self.edges = [_Edge(pts[i], pts[(i + 1) % n]) for i in range(n)]
        poly = []
        for i in range(n):
            v = _Vertex((i - 1) % n, i, pts[i].x, pts[i].y, 0.0)
            self._set_velocity(v)
            poly.append(v)
        self.polys: list[list[_Vertex]] = [poly]
        self.time = 0.0
        self.events: list[SkeletonEvent] = []
        self.arcs: list[tuple[tuple[float, float], tuple[float, float], float, float]] = []

    # --- vertex kinematics -------------------------------------------------

    def _turn(self, v: _Vertex) -> tuple[float, float]:
        a, b = self.edges[v.e_in], self.edges[v.e_out]
        return a.dx * b.dy - a.dy * b.dx, a.dx * b.dx + a.dy * b.dy

    def _set_velocity(self, v: _Vertex) -> None:
        a, b = self.edges[v.e_in], self.edges[v.e_out]
        det = a.nx * b.ny - a.ny * b.nx
        if abs(det) < PARALLEL_TOL:
            v.vx = v.vy = 0.0
            return
        v.vx = (b.ny - a.ny) / det
        v.vy = (a.nx - b.nx) / det

    def _retarget(self, v: _Vertex, t: float) -> None:
        """Close the current trace of ``v`` at time ``t`` and restart it with new edges."""
        x, y = v.pos(t)
        self._arc(v, (x, y), t)
        v.x, v.y, v.t = x, y, t
        v.ox, v.oy, v.ot = x, y, t
        self._set_velocity(v)

    def _new_vertex(self, e_in: int, e_out: int, p, t: float) -> _Vertex:
        v = _Vertex(e_in, e_out, p[0], p[1], t)
        self._set_velocity(v)
        return v

    def _arc(self, v: _Vertex, end, t: float) -> None:
        if math.hypot(end[0] - v.ox, end[1] - v.oy) > self.eps:
            self.arcs.append(((v.ox, v.oy), (end[0], end[1]), v.ot, t))

    def _event(self, t: float, kind: EventKind, p) -> None:
        self.events.append(SkeletonEvent(t, kind, Point2D(p[0], p[1])))

    # --- event search ------------------------------------------------------

    def _next_event(self, t_limit: float):
        T = self.time
        eps = self.eps
        best = None  # (t, x, y, kind, poly index, payload)

        def consider(cand):
            nonlocal best
            if best is None:
                best = cand
                return
            if cand[0] < best[0] - TIME_TIE:
                best = cand
            elif abs(cand[0] - best[0]) <= TIME_TIE and (cand[1], cand[2]) < (best[1], best[2]):
                best = cand

        for pi, poly in enumerate(self.polys):
            n = len(poly)
            cur = [v.pos(T) for v in poly]
            for i in range(n):
                u, w = poly[i], poly[(i + 1) % n]
                e = self.edges[u.e_out]
                s = e.dx * (cur[(i + 1) % n][0] - cur[i][0]) + e.dy * (cur[(i + 1) % n][1] - cur[i][1])
                rate = e.dx * (w.vx - u.vx) + e.dy * (w.vy - u.vy)
                if s <= eps:
                    t = T
                elif rate < 0:
                    t = T - s / rate
                else:
                    continue
                if t > t_limit:
                    continue
                pu, pw = u.pos(t), w.pos(t)
                consider((t, 0.5 * (pu[0] + pw[0]), 0.5 * (pu[1] + pw[1]), EventKind.EDGE_COLLAPSE, pi, i))
            for i in range(n):
                v = poly[i]
                cr, _ = self._turn(v)
                if cr >= -PARALLEL_TOL:
                    continue
                px, py = cur[i]
                for j in range(n):
                    a_v = poly[j]
                    eid = a_v.e_out
                    if eid == v.e_in or eid == v.e_out:
                        continue
                    e = self.edges[eid]
                    f = e.nx * px + e.ny * py - (e.c + T)
                    if f < -eps:
                        continue
                    rate = e.nx * v.vx + e.ny * v.vy - 1.0
                    if rate >= 0:
                        continue
                    t = T - f / rate
                    if t > t_limit or (best is not None and t > best[0] + TIME_TIE):
                        continue
                    q = v.pos(t)
                    a = a_v.pos(t)
                    b = poly[(j + 1) % n].pos(t)
                    length = e.dx * (b[0] - a[0]) + e.dy * (b[1] - a[1])
                    lam = e.dx * (q[0] - a[0]) + e.dy * (q[1] - a[1])
                    if length <= eps or lam < -eps or lam > length + eps:
                        continue
                    consider((t, q[0], q[1], EventKind.SPLIT, pi, (i, j)))
        return best

    # --- event handling ----------------------------------------------------

    def _apply(self, ev) -> None:
        t, x, y, kind, pi, payload = ev
        t = max(t, self.time)
        self.time = t
        poly = self.polys.pop(pi)
        n = len(poly)
        if kind is EventKind.EDGE_COLLAPSE:
            i = payload
            u, w = poly[i], poly[(i + 1) % n]
            q = (x, y)
            self._arc(u, q, t)
            self._arc(w, q, t)
            z = self._new_vertex(u.e_in, w.e_out, q, t)
            if i + 1 < n:
                new = poly[:i] + [z] + poly[i + 2 :]
            else:
                new = [z] + poly[1:i]
            self._event(t, kind, q)
            self.polys.extend(self._cleanup(new, t))
        else:
            i, j = payload
            v = poly[i]
            eid = poly[j].e_out
            e = self.edges[eid]
            # snap the hit point onto the moving edge line
            off = e.nx * x + e.ny * y - (e.c + t)
            q = (x - off * e.nx, y - off * e.ny)
            self._arc(v, q, t)
            v1 = self._new_vertex(eid, v.e_out, q, t)
            v2 = self._new_vertex(v.e_in, eid, q, t)
            p1 = [v1] + [poly[k % n] for k in range(i + 1, j + 1 if j > i else j + n + 1)]
            p2 = [v2] + [poly[k % n] for k in range(j + 1, i if i > j else i + n)]
            self._event(t, kind, q)
            self.polys.extend(self._cleanup(p1, t))
            self.polys.extend(self._cleanup(p2, t))

    def _collapse(self, poly: list[_Vertex], t: float) -> None:
        pts = [v.pos(t) for v in poly]
        for v, p in zip(poly, pts):
            self._arc(v, p, t)
        m = len(pts)
        seen = set()
        for k in range(m if m > 2 else 1):
            a, b = pts[k], pts[(k + 1) % m]
            if math.hypot(a[0] - b[0], a[1] - b[1]) <= self.eps:
                continue
            key = tuple(sorted((a, b)))
            if key in seen:
                continue
            seen.add(key)
            self.arcs.append((a, b, t, t))
        if pts:
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            self._event(t, EventKind.EDGE_COLLAPSE, (cx, cy))

    def _cleanup(self, poly: list[_Vertex], t: float) -> list[list[_Vertex]]:
        """Remove coincident, collinear and spike vertices; drop vanished polygons."""
        eps = self.eps
        guard = 4 * len(poly) + 8
        while guard > 0:
            guard -= 1
            n = len(poly)
            if n < 3:
                self._collapse(poly, t)
                return []
            changed = False
            for i in range(n):
                v, nxt = poly[i], poly[(i + 1) % n]
                pv, pn = v.pos(t), nxt.pos(t)
                if math.hypot(pv[0] - pn[0], pv[1] - pn[1]) <= eps:
                    q = (0.5 * (pv[0] + pn[0]), 0.5 * (pv[1] + pn[1]))
                    self._arc(v, q, t)
                    self._arc(nxt, q, t)
                    z = self._new_vertex(v.e_in, nxt.e_out, q, t)
                    self._event(t, EventKind.EDGE_COLLAPSE, q)
                    if i + 1 < n:
                        poly = poly[:i] + [z] + poly[i + 2 :]
                    else:
                        poly = [z] + poly[1:i]
                    changed = True
                    break
                cr, dt = self._turn(v)
                if abs(cr) < PARALLEL_TOL:
                    prev = poly[i - 1]
                    self._arc(v, pv, t)
                    if dt > 0:
                        # collinear: both edges ride the same line forever
                        nxt.e_in = v.e_in
                    else:
                        # zero-width sliver: the coincident edges meet along a skeleton arc
                        pp = prev.pos(t)
                        if math.hypot(pp[0] - pv[0], pp[1] - pv[1]) >= math.hypot(pn[0] - pv[0], pn[1] - pv[1]):
                            if math.hypot(pn[0] - pv[0], pn[1] - pv[1]) > eps:
                                self.arcs.append((pv, pn, t, t))
                            nxt.e_in = v.e_in
                            self._retarget(nxt, t)
                        else:
                            if math.hypot(pp[0] - pv[0], pp[1] - pv[1]) > eps:
                                self.arcs.append((pv, pp, t, t))
                            prev.e_out = v.e_out
                            self._retarget(prev, t)
                        self._event(t, EventKind.EDGE_COLLAPSE, pv)
                    poly = poly[:i] + poly[i + 1 :]
                    changed = True
                    break
            if not changed:
                break
        else:
            raise NumericalDegeneracy("wavefront cleanup did not converge")
        area = _shoelace([v.pos(t) for v in poly])
        if abs(area) <= eps * eps * 1e3 or len(poly) < 3:
            self._collapse(poly, t)
            return []
        return [poly]

    # --- driver ------------------------------------------------------------

    def run(self, until: float) -> None:
        limit = 50 * sum(len(p) for p in self.polys) ** 2 + 100
        while self.polys:
            limit -= 1
            if limit < 0:
                raise NumericalDegeneracy("wavefront simulation did not terminate")
            ev = self._next_event(until + TIME_TIE)
            if ev is None:
                if math.isinf(until):
                    raise NumericalDegeneracy("wavefront has no further events but has not vanished")
                break
            self._apply(ev)

    def snapshot(self, t: float) -> list[list[tuple[float, float]]]:
        out = []
        for poly in self.polys:
            pts = [v.pos(t) for v in poly]
            out.append(pts)
        return out

    def close_traces(self, t: float) -> None:
        for poly in self.polys:
            for v in poly:
                self._arc(v, v.pos(t), t)


def _normalized_vertices(ring: Ring) -> list[Point2D]:
    """Drop vertices whose two edges are collinear (zero-length wavefront edges)."""
    pts = list(ring.vertices)
    changed = True
    while changed and len(pts) > 3:
        changed = False
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            u = (b.x - a.x, b.y - a.y)
            w = (c.x - b.x, c.y - b.y)
            cr = u[0] * w[1] - u[1] * w[0]
            if abs(cr) <= PARALLEL_TOL * math.hypot(*u) * math.hypot(*w) and u[0] * w[0] + u[1] * w[1] > 0:
                del pts[i]
                changed = True
                break
    return pts


def _engine_ring(ring: Ring, direction: Direction) -> Ring:
    want = Orientation.CCW if direction is Direction.INWARD else Orientation.CW
    return ring.oriented(want)


def _coalesce(events: list[SkeletonEvent], eps: float) -> tuple[SkeletonEvent, ...]:
    out: list[SkeletonEvent] = []
    for e in sorted(events, key=lambda e: (e.time, e.location.x, e.location.y)):
        if any(
            o.kind is e.kind and abs(o.time - e.time) <= TIME_TIE and o.location.distance(e.location) <= 1e3 * eps
            for o in out[-8:]
        ):
            continue
        out.append(e)
    return tuple(out)


def build_straight_skeleton(
    ring: Ring, direction: Direction = Direction.INWARD, max_time: float | None = None
) -> StraightSkeleton:
    """Trace the wavefront of ``ring`` and record skeleton arcs and events.

    Inward skeletons run until the wavefront vanishes unless ``max_time`` is
    given; outward ones stop at ``max_time`` (default: the ring's bounding-box
    diagonal), since an outward front never vanishes.
    """
    if max_time is None:
        max_time = math.inf if direction is Direction.INWARD else ring.diagonal()
    wf = _Wavefront(_normalized_vertices(_engine_ring(ring, direction)), ring.eps)
    wf.run(max_time)
    if wf.polys:
        wf.close_traces(max_time)
    arcs, times = [], []
    for a, b, t0, t1 in wf.arcs:
        arcs.append(Segment(Point2D(*a), Point2D(*b)))
        times.append((t0, t1))
    return StraightSkeleton(ring, direction, tuple(arcs), _coalesce(wf.events, ring.eps), tuple(times))


def _clean_snapshot(pts, eps: float) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for p in pts:
        if not out or math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) > eps:
            out.append(p)
    while len(out) > 1 and math.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= eps:
        out.pop()
    return out


def offset_ring(ring: Ring, spec: OffsetSpec) -> list[Ring]:
    """Wavefront snapshot of ``ring`` at time ``spec.distance``.

    Returns CCW rings for the offset boundary, largest first. Inward offsets
    may split into several rings or vanish (empty list). For outward offsets,
    any pocket enclosed by the grown front comes back clockwise.
    """
    if spec.distance == 0:
        return [ring.oriented(Orientation.CCW)]
    wf = _Wavefront(_normalized_vertices(_engine_ring(ring, spec.direction)), ring.eps)
    wf.run(spec.distance)
    rings = []
    for pts in wf.snapshot(spec.distance):
        pts = _clean_snapshot(pts, ring.eps)
        if len(pts) < 3 or abs(_shoelace(pts)) <= ring.eps**2 * 1e3:
            continue
        try:
            r = Ring(pts, eps=ring.eps)
        except InvalidGeometry as exc:
            raise NumericalDegeneracy(f"offset produced an invalid ring: {exc}") from exc
        if spec.direction is Direction.OUTWARD:
            r = r.reversed()
        rings.append(r)
    rings.sort(key=lambda r: -r.signed_area)
    return rings


def _grow_hole(hole: Ring, d: float) -> Ring:
    rings = offset_ring(hole, OffsetSpec(d, Direction.OUTWARD))
    main = rings[0]  # largest CCW ring; CW pockets stay inside the grown obstacle
    return main.oriented(Orientation.CW)


def _check_holes(outer: Ring, holes: list[Ring], eps: float) -> None:
    for i, h in enumerate(holes):
        if _rings_cross(outer, h, eps) or ring_contains_point(outer, h.vertices[0], eps) is not Location.INSIDE:
            raise OffsetOverlap(f"grown hole {i} leaves the shrunk outer boundary", (0, i + 1))
    for i, j in itertools.combinations(range(len(holes)), 2):
        hi, hj = holes[i], holes[j]
        if (
            _rings_cross(hi, hj, eps)
            or ring_contains_point(hj, hi.vertices[0], eps) is not Location.OUTSIDE
            or ring_contains_point(hi, hj.vertices[0], eps) is not Location.OUTSIDE
        ):
            raise OffsetOverlap(f"grown holes {i} and {j} overlap", (i + 1, j + 1))


def offset_region(roi: RegionOfInterest, safe_distance: float) -> RegionOfInterest:
    """Shrink the outer boundary and grow every hole by ``safe_distance``.

    Ring indices in errors count the outer ring as 0 and holes from 1.
    """
    OffsetSpec(safe_distance)
    if safe_distance == 0:
        return roi
    outer = offset_ring(roi.outer, OffsetSpec(safe_distance, Direction.INWARD))
    if not outer:
        raise RegionCollapsed(f"outer boundary vanishes at offset {safe_distance}", (0,))
    if len(outer) > 1:
        raise RegionSplit(f"outer boundary splits into {len(outer)} pieces at offset {safe_distance}", len(outer))
    eps = roi.eps
    holes = [_grow_hole(h, safe_distance).with_eps(eps) for h in roi.holes]
    _check_holes(outer[0], holes, eps)
    return RegionOfInterest(outer[0].with_eps(eps), tuple(holes), roi.nesting_depth)


def offset_region_parts(roi: RegionOfInterest, safe_distance: float) -> list[RegionOfInterest]:
    """Like :func:`offset_region`, but a split outer yields one region per piece.

    Grown holes are attached to the piece that contains them; pieces swallowed
    by a grown hole are dropped.
    """
    OffsetSpec(safe_distance)
    if safe_distance == 0:
        return [roi]
    pieces = offset_ring(roi.outer, OffsetSpec(safe_distance, Direction.INWARD))
    if not pieces:
        raise RegionCollapsed(f"outer boundary vanishes at offset {safe_distance}", (0,))
    eps = roi.eps
    holes = [_grow_hole(h, safe_distance).with_eps(eps) for h in roi.holes]
    out = []
    for piece in pieces:
        piece = piece.with_eps(eps)
        mine = []
        swallowed = False
        for i, h in enumerate(holes):
            if _rings_cross(piece, h, eps):
                raise OffsetOverlap(f"grown hole {i} crosses the shrunk outer boundary", (0, i + 1))
            if ring_contains_point(piece, h.vertices[0], eps) is Location.INSIDE:
                mine.append(h)
            elif ring_contains_point(h, piece.vertices[0], eps) is Location.INSIDE:
                swallowed = True
        if swallowed:
            continue
        _check_holes(piece, mine, eps)
        out.append(RegionOfInterest(piece, tuple(mine), roi.nesting_depth))
    if not out:
        raise RegionCollapsed(f"no free space remains at offset {safe_distance}", (0,))
    return out
