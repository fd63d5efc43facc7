"""Boustrophedon path generation, transition routing and frame mapping."""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass, replace

from .decompose import SweepFrame
from .errors import EmptyPath, InvalidOverlap, NumericalDegeneracy, UnroutableTransition
from .geometry import Location, Point2D, RotationFrame, segment_crossing_params
from .merge import MergedRegion
from .regions import RegionOfInterest


class FirstLineMode(enum.Enum):
    PAPER = "paper"
    CENTERED = "centered"


@dataclass(frozen=True)
class SpacingSpec:
    swath_width: float
    sidelap: float
    first_line_mode: FirstLineMode = FirstLineMode.PAPER

    @property
    def spacing_d(self) -> float:
        return self.swath_width * (1.0 - self.sidelap)


def spacing_from_overlap(
    swath_width: float, sidelap: float, first_line_mode: FirstLineMode = FirstLineMode.PAPER
) -> SpacingSpec:
    """Line spacing that gives ``sidelap`` overlap between adjacent image swaths."""
    if not (0.0 <= sidelap < 1.0):
        raise InvalidOverlap(f"sidelap must be in [0, 1), got {sidelap}")
    if not (swath_width > 0 and math.isfinite(swath_width)):
        raise InvalidOverlap(f"swath width must be positive, got {swath_width}")
    return SpacingSpec(float(swath_width), float(sidelap), FirstLineMode(first_line_mode))


@dataclass(frozen=True)
class BoustrophedonPath:
    waypoints: tuple[Point2D, ...]
    region: MergedRegion | None
    line_count: int
    # sweep-frame height of every line, in flight order
    line_levels: tuple[float, ...] = ()
    # bend points of the turn after each line, where a straight hop would leave the region
    turns: tuple[tuple[Point2D, ...], ...] = ()

    def legs(self) -> list[tuple[Point2D, Point2D]]:
        w = self.waypoints
        return [(w[k], w[k + 1]) for k in range(0, len(w) - 1, 2)]

    def route(self) -> tuple[Point2D, ...]:
        """Full flown polyline: waypoints with turn bend points spliced in."""
        if not any(self.turns):
            return self.waypoints
        out: list[Point2D] = []
        for k, (a, b) in enumerate(self.legs()):
            if k:
                out.extend(self.turns[k - 1])
            out.extend((a, b))
        return tuple(out)

    def reversed(self) -> "BoustrophedonPath":
        turns = tuple(t[::-1] for t in self.turns[::-1])
        return replace(self, waypoints=self.waypoints[::-1], line_levels=self.line_levels[::-1], turns=turns)


@dataclass(frozen=True)
class CoveragePlan:
    """Ordered survey paths and the transitions flown between them.

    ``transitions[k]`` is a polyline from the last waypoint of ``paths[k]`` to
    the first waypoint of ``paths[k + 1]``; a straight hop has two points.
    ``region`` is the offset region the paths were planned in and
    ``source_region`` the region before offsetting, both in the plan's frame.
    """

    paths: tuple[BoustrophedonPath, ...]
    transitions: tuple[tuple[Point2D, ...], ...]
    sweep_frame: SweepFrame
    spacing: SpacingSpec
    safe_distance: float
    region: RegionOfInterest | None = None
    source_region: RegionOfInterest | None = None


def _line_levels(y_min: float, y_max: float, spacing: SpacingSpec, eps: float) -> list[float]:
    d = spacing.spacing_d
    if spacing.first_line_mode is FirstLineMode.PAPER:
        out = []
        n = 1
        while y_min + n * d < y_max - eps:
            out.append(y_min + n * d)
            n += 1
        return out
    height = y_max - y_min
    k = max(1, math.ceil(height / d - 1e-12))
    margin = 0.5 * (height - (k - 1) * d)
    return [y_min + margin + i * d for i in range(k)]


def horizontal_hits(pts, y: float) -> list[float]:
    n = len(pts)
    xs = []
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if (a[1] > y) != (b[1] > y):
            xs.append(a[0] + (y - a[1]) * (b[0] - a[0]) / (b[1] - a[1]))
    return sorted(xs)


def generate_zigzag(region: MergedRegion, spacing: SpacingSpec) -> BoustrophedonPath:
    """Alternating sweep lines across a monotone region (frame coordinates).

    Odd-numbered lines are flown left to right, even ones right to left.
    """
    ring = region.boundary
    _, y_min, _, y_max = ring.bbox()
    levels = _line_levels(y_min, y_max, spacing, ring.eps)
    if not levels:
        raise EmptyPath(f"region {region.member_cells} is thinner than the line spacing {spacing.spacing_d}")
    pts = ring.vertices
    waypoints: list[Point2D] = []
    for n, y in enumerate(levels, start=1):
        xs = horizontal_hits(pts, y)
        if len(xs) != 2:
            raise NumericalDegeneracy(f"sweep line y={y} meets region {region.member_cells} {len(xs)} times")
        left, right = Point2D(xs[0], y), Point2D(xs[1], y)
        waypoints.extend((left, right) if n % 2 else (right, left))
    turns = _turns(waypoints, ring)
    return BoustrophedonPath(tuple(waypoints), region, len(levels), tuple(levels), turns)


def _turns(waypoints: list[Point2D], ring) -> tuple[tuple[Point2D, ...], ...]:
    # a turn between lines hugs the boundary where it is concave
    free = RegionOfInterest(ring if ring.signed_area > 0 else ring.reversed())
    out = []
    for k in range(1, len(waypoints) - 1, 2):
        a, b = waypoints[k], waypoints[k + 1]
        out.append(shortest_route(a, b, free)[1:-1])
    return tuple(out) if any(out) else ()


@dataclass(frozen=True)
class WorldLine:
    """``y = slope * x + intercept``, or ``x = vertical_x`` for vertical lines."""

    slope: float | None
    intercept: float | None
    vertical_x: float | None = None


def line_family_world(spacing: SpacingSpec, frame: SweepFrame, n: int) -> WorldLine:
    """World image of the frame line ``y' = n * d``."""
    d = spacing.spacing_d
    p = frame.to_world((0.0, n * d))
    q = frame.to_world((1.0, n * d))
    dx, dy = q.x - p.x, q.y - p.y
    if abs(dx) < 1e-12:
        return WorldLine(None, None, p.x)
    m = dy / dx
    return WorldLine(m, p.y - m * p.x)


# --- transitions ---------------------------------------------------------


def segment_clear(a, b, roi: RegionOfInterest, eps: float | None = None) -> bool:
    """True when segment ``ab`` stays within the closed free space of ``roi``."""
    eps = roi.eps if eps is None else eps
    if math.hypot(b[0] - a[0], b[1] - a[1]) <= eps:
        return roi.contains(a, eps) is not Location.OUTSIDE
    ts = {0.0, 1.0}
    for p, q in roi.edges():
        ts.update(segment_crossing_params(a, b, p, q, eps))
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 <= 1e-15:
            continue
        tm = 0.5 * (t0 + t1)
        mid = (a[0] + tm * (b[0] - a[0]), a[1] + tm * (b[1] - a[1]))
        if roi.contains(mid, eps) is Location.OUTSIDE:
            return False
    return True


def shortest_route(a: Point2D, b: Point2D, roi: RegionOfInterest) -> tuple[Point2D, ...]:
    """Shortest polyline from ``a`` to ``b`` through the visibility graph of the region's vertices."""
    if segment_clear(a, b, roi):
        return (a, b)
    nodes = [a, b] + [p for r in roi.rings() for p in r.vertices]
    visible: dict[tuple[int, int], bool] = {}

    def sees(i: int, j: int) -> bool:
        key = (min(i, j), max(i, j))
        if key not in visible:
            visible[key] = segment_clear(nodes[i], nodes[j], roi)
        return visible[key]

    dist = {0: 0.0}
    prev: dict[int, int] = {}
    heap = [(0.0, 0)]
    done = set()
    while heap:
        du, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == 1:
            break
        for v in range(1, len(nodes)):
            if v in done or v == u:
                continue
            nd = du + nodes[u].distance(nodes[v])
            if nd < dist.get(v, math.inf) and sees(u, v):
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if 1 not in done:
        raise UnroutableTransition(f"no collision-free route from {tuple(a)} to {tuple(b)}")
    route = [1]
    while route[-1] != 0:
        route.append(prev[route[-1]])
    return tuple(nodes[i] for i in reversed(route))


def link_paths(
    paths: list[BoustrophedonPath],
    roi: RegionOfInterest,
    sweep_frame: SweepFrame | None = None,
    spacing: SpacingSpec | None = None,
    safe_distance: float = 0.0,
    source_region: RegionOfInterest | None = None,
) -> CoveragePlan:
    """Order paths greedily by nearest endpoint and connect them with transitions.

    ``roi`` is the free space (offset region) in the same coordinates as the
    paths; transitions that would leave it are rerouted around obstacles.
    """
    if not paths:
        raise EmptyPath("nothing to link")
    remaining = list(range(len(paths)))
    first = min(remaining, key=lambda i: (tuple(paths[i].waypoints[0]), i))
    remaining.remove(first)
    ordered = [paths[first]]
    while remaining:
        end = ordered[-1].waypoints[-1]
        best = min(
            (
                min(
                    (end.distance(paths[i].waypoints[0]), i, False),
                    (end.distance(paths[i].waypoints[-1]), i, True),
                )
                for i in remaining
            )
        )
        _, i, flip = best
        remaining.remove(i)
        ordered.append(paths[i].reversed() if flip else paths[i])
    transitions = tuple(
        shortest_route(p.waypoints[-1], q.waypoints[0], roi) for p, q in zip(ordered, ordered[1:])
    )
    return CoveragePlan(
        tuple(ordered),
        transitions,
        sweep_frame if sweep_frame is not None else SweepFrame.from_sweep_angle(0.0),
        spacing if spacing is not None else SpacingSpec(1.0, 0.0),
        safe_distance,
        roi,
        source_region,
    )


def _map_points(rot: RotationFrame, pts) -> tuple[Point2D, ...]:
    return tuple(Point2D(*rot.apply_xy(p.x, p.y)) for p in pts)


def to_world(plan: CoveragePlan, frame: SweepFrame) -> CoveragePlan:
    """Map a plan built in sweep-frame coordinates back to world coordinates."""
    inv = frame.rotation.inverse()
    paths = tuple(
        replace(p, waypoints=_map_points(inv, p.waypoints), turns=tuple(_map_points(inv, t) for t in p.turns))
        for p in plan.paths
    )
    transitions = tuple(_map_points(inv, t) for t in plan.transitions)
    region = plan.region.transformed(inv) if plan.region is not None else None
    source = plan.source_region.transformed(inv) if plan.source_region is not None else None
    return replace(plan, paths=paths, transitions=transitions, region=region, source_region=source)
