"""Planar primitives: points, vectors, segments, rings and rotation frames.

All coordinates are double precision planar meters. Coincidence tests use a
scale-free tolerance, ``EPS_REL`` times the bounding-box diagonal of the
geometry at hand (see :attr:`Ring.eps`).
"""

from __future__ import annotations

import enum
import math
from collections import namedtuple
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidGeometry

EPS_REL = 1e-9


class Point2D(namedtuple("_Point2D", "x y")):
    __slots__ = ()

    def __new__(cls, x, y):
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidGeometry(f"non-finite coordinate ({x}, {y})")
        return super().__new__(cls, x, y)

    def __sub__(self, other: "Point2D") -> "Vec2D":
        return Vec2D(self.x - other.x, self.y - other.y)

    def __add__(self, v: "Vec2D") -> "Point2D":  # type: ignore[override]
        return Point2D(self.x + v.dx, self.y + v.dy)

    def distance(self, other: "Point2D") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class Vec2D(namedtuple("_Vec2D", "dx dy")):
    __slots__ = ()

    def __new__(cls, dx, dy):
        dx = float(dx)
        dy = float(dy)
        if not (math.isfinite(dx) and math.isfinite(dy)):
            raise InvalidGeometry(f"non-finite vector ({dx}, {dy})")
        return super().__new__(cls, dx, dy)

    def __add__(self, other: "Vec2D") -> "Vec2D":  # type: ignore[override]
        return Vec2D(self.dx + other.dx, self.dy + other.dy)

    def __sub__(self, other: "Vec2D") -> "Vec2D":
        return Vec2D(self.dx - other.dx, self.dy - other.dy)

    def __mul__(self, k: float) -> "Vec2D":  # type: ignore[override]
        return Vec2D(self.dx * k, self.dy * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec2D":
        return Vec2D(-self.dx, -self.dy)

    def dot(self, other: "Vec2D") -> float:
        return self.dx * other.dx + self.dy * other.dy

    def norm(self) -> float:
        return math.hypot(self.dx, self.dy)

    def unit(self) -> "Vec2D":
        n = self.norm()
        if n == 0.0:
            raise InvalidGeometry("cannot normalize a zero vector")
        return Vec2D(self.dx / n, self.dy / n)

    def left_normal(self) -> "Vec2D":
        return Vec2D(-self.dy, self.dx)


def cross2(u: Vec2D, w: Vec2D) -> float:
    """Scalar cross product ``u x w``; positive when ``w`` lies to the left of ``u``."""
    return u[0] * w[1] - u[1] * w[0]


def orient(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Twice the signed area of triangle ``abc`` (cross of ``b - a`` and ``c - a``)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def bounding_box(points: Iterable[Sequence[float]]) -> tuple[float, float, float, float]:
    xs, ys = zip(*((p[0], p[1]) for p in points))
    return min(xs), min(ys), max(xs), max(ys)


def bbox_diagonal(points: Iterable[Sequence[float]]) -> float:
    x0, y0, x1, y1 = bounding_box(points)
    return math.hypot(x1 - x0, y1 - y0)


@dataclass(frozen=True)
class Segment:
    a: Point2D
    b: Point2D

    def __post_init__(self):
        scale = max(1.0, abs(self.a.x), abs(self.a.y), abs(self.b.x), abs(self.b.y))
        if self.a.distance(self.b) <= 1e-15 * scale:
            raise InvalidGeometry(f"degenerate segment at {self.a}")

    def length(self) -> float:
        return self.a.distance(self.b)

    def midpoint(self) -> Point2D:
        return Point2D(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))


def point_segment_distance(p, a, b) -> float:
    ax, ay = a[0], a[1]
    dx, dy = b[0] - ax, b[1] - ay
    px, py = p[0] - ax, p[1] - ay
    ll = dx * dx + dy * dy
    if ll == 0.0:
        return math.hypot(px, py)
    t = min(1.0, max(0.0, (px * dx + py * dy) / ll))
    return math.hypot(px - t * dx, py - t * dy)


def segments_intersect(p1, p2, q1, q2, eps: float = 0.0) -> bool:
    """True when closed segments ``p1p2`` and ``q1q2`` share a point (touching counts).

    ``eps`` is an absolute distance under which segments are treated as touching.
    """
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        point_segment_distance(p1, q1, q2) <= eps
        or point_segment_distance(p2, q1, q2) <= eps
        or point_segment_distance(q1, p1, p2) <= eps
        or point_segment_distance(q2, p1, p2) <= eps
    )


def segment_crossing_params(p1, p2, q1, q2, eps: float) -> list[float]:
    """Parameters ``t`` along ``p1p2`` where it meets segment ``q1q2``.

    Proper crossings give one parameter; touching endpoints and collinear
    overlaps give the parameters of the contact points. Used to split a
    segment into pieces whose midpoints can be classified independently.
    """
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    rr = rx * rx + ry * ry
    out = []
    denom = rx * sy - ry * sx
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    if abs(denom) > 1e-14 * math.sqrt(rr * (sx * sx + sy * sy)):
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        seg_len_q = math.sqrt(sx * sx + sy * sy)
        tol_t = eps / math.sqrt(rr)
        tol_u = eps / seg_len_q
        if -tol_t <= t <= 1 + tol_t and -tol_u <= u <= 1 + tol_u:
            out.append(min(1.0, max(0.0, t)))
    # endpoints of q lying on p, and endpoints of p lying on q (covers collinear overlap)
    for q in (q1, q2):
        if point_segment_distance(q, p1, p2) <= eps:
            t = ((q[0] - p1[0]) * rx + (q[1] - p1[1]) * ry) / rr
            out.append(min(1.0, max(0.0, t)))
    for t, p in ((0.0, p1), (1.0, p2)):
        if point_segment_distance(p, q1, q2) <= eps:
            out.append(t)
    return out


class Orientation(enum.Enum):
    CW = "CW"
    CCW = "CCW"


class Location(enum.Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    ON_BOUNDARY = "OnBoundary"


def _shoelace(pts: Sequence[Sequence[float]]) -> float:
    # fsum is correctly rounded, so reversing the ring negates the result exactly
    n = len(pts)
    return 0.5 * math.fsum(
        pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n)
    )


class Ring:
    """Closed, simple planar vertex chain (last vertex connects back to the first).

    Construction validates the invariants: at least three vertices, no
    coincident consecutive vertices, nonzero area and no self-intersection
    (brute-force over all edge pairs). A duplicated closing vertex is dropped.

    ``eps`` overrides the coincidence tolerance, which otherwise defaults to
    ``EPS_REL`` times the ring's own bounding-box diagonal.
    """

    __slots__ = ("vertices", "_area", "_eps")

    def __init__(self, vertices: Iterable, eps: float | None = None, validate: bool = True):
        pts = [v if isinstance(v, Point2D) else Point2D(v[0], v[1]) for v in vertices]
        if len(pts) >= 2 and pts[0] == pts[-1]:
            pts.pop()
        if len(pts) < 3:
            raise InvalidGeometry(f"ring needs at least 3 vertices, got {len(pts)}")
        self.vertices: tuple[Point2D, ...] = tuple(pts)
        self._eps = eps if eps is not None else EPS_REL * bbox_diagonal(pts)
        self._area = _shoelace(pts)
        if validate:
            self._validate()

    def _validate(self) -> None:
        pts = self.vertices
        n = len(pts)
        eps = self._eps
        for i in range(n):
            if pts[i].distance(pts[(i + 1) % n]) <= eps:
                raise InvalidGeometry(f"coincident consecutive vertices at index {i}: {pts[i]}")
        if self._area == 0.0 or abs(self._area) <= eps * eps:
            raise InvalidGeometry("ring has zero area")
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            # adjacent edge folding back onto this one
            c = pts[(i + 2) % n]
            if point_segment_distance(c, a, b) <= eps or point_segment_distance(a, b, c) <= eps:
                raise InvalidGeometry(f"ring folds back on itself at vertex {(i + 1) % n}")
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if segments_intersect(a, b, pts[j], pts[(j + 1) % n], eps):
                    raise InvalidGeometry(f"ring self-intersects: edges {i} and {j}")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self) -> str:
        return f"Ring({[tuple(p) for p in self.vertices]!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def eps(self) -> float:
        return self._eps

    @property
    def signed_area(self) -> float:
        return self._area

    @property
    def area(self) -> float:
        return abs(self._area)

    @property
    def orientation(self) -> Orientation:
        return Orientation.CCW if self._area > 0 else Orientation.CW

    def edges(self) -> list[tuple[Point2D, Point2D]]:
        pts = self.vertices
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

    def reversed(self) -> "Ring":
        return Ring(self.vertices[::-1], eps=self._eps, validate=False)

    def oriented(self, orientation: Orientation) -> "Ring":
        return self if self.orientation is orientation else self.reversed()

    def bbox(self) -> tuple[float, float, float, float]:
        return bounding_box(self.vertices)

    def diagonal(self) -> float:
        return bbox_diagonal(self.vertices)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def with_eps(self, eps: float) -> "Ring":
        return Ring(self.vertices, eps=eps, validate=False)


def signed_area(ring: Ring) -> float:
    """Shoelace area, positive iff the ring is counter-clockwise."""
    return ring.signed_area


def ring_contains_point(ring: Ring, p, eps: float | None = None) -> Location:
    """Even-odd ray-cast point classification with an explicit boundary band."""
    eps = ring.eps if eps is None else eps
    px, py = p[0], p[1]
    inside = False
    pts = ring.vertices
    n = len(pts)
    for i in range(n):
        a = pts[i]
        b = pts[(i + 1) % n]
        if point_segment_distance((px, py), a, b) < eps:
            return Location.ON_BOUNDARY
        if (a.y > py) != (b.y > py):
            x = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y)
            if x > px:
                inside = not inside
    return Location.INSIDE if inside else Location.OUTSIDE


def is_convex(ring: Ring) -> bool:
    """True iff every interior angle is below 180 degrees (collinear vertices allowed)."""
    pts = ring.vertices
    n = len(pts)
    sign = 0
    for i in range(n):
        c = orient(pts[i - 1], pts[i], pts[(i + 1) % n])
        if c == 0.0:
            continue
        s = 1 if c > 0 else -1
        if sign == 0:
            sign = s
        elif s != sign:
            return False
    return True


@dataclass(frozen=True)
class RotationFrame:
    """Rigid rotation by ``theta`` radians (CCW) about ``origin``."""

    theta: float
    origin: Point2D = Point2D(0.0, 0.0)

    def inverse(self) -> "RotationFrame":
        return RotationFrame(-self.theta, self.origin)

    def apply_xy(self, x: float, y: float) -> tuple[float, float]:
        c, s = math.cos(self.theta), math.sin(self.theta)
        ox, oy = self.origin
        dx, dy = x - ox, y - oy
        return ox + c * dx - s * dy, oy + s * dx + c * dy


Geometry = Union[Point2D, Ring]


def rotate(frame: RotationFrame, g):
    """Rotate a point, a ring, or a sequence of points by ``frame``."""
    if isinstance(g, Ring):
        return Ring([Point2D(*frame.apply_xy(p.x, p.y)) for p in g.vertices], eps=g.eps, validate=False)
    if isinstance(g, Point2D) or (len(g) == 2 and not hasattr(g[0], "__len__")):
        return Point2D(*frame.apply_xy(g[0], g[1]))
    return [Point2D(*frame.apply_xy(p[0], p[1])) for p in g]
