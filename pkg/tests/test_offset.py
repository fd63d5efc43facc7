import math
import random

import numpy as np
import pytest

from covplan.errors import InvalidGeometry, OffsetOverlap, RegionCollapsed, RegionSplit
from covplan.geometry import Ring
from covplan.offset import (
    Direction,
    EventKind,
    OffsetSpec,
    build_straight_skeleton,
    offset_region,
    offset_region_parts,
    offset_ring,
)
from covplan.regions import region_from_rings
from shapes import (
    UNIT_SQUARE,
    convex_points,
    ring_distance,
    s10_with_hole,
    shoelace,
    simple_polygon,
    square,
    star_points,
    winding_numbers,
)


def _stars(seed, n):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        try:
            out.append(Ring(star_points(rng, rng.randint(4, 12), rng.uniform(2, 6), rng.uniform(6, 10))))
        except InvalidGeometry:
            pass
    return out


def _convex(seed, n):
    rng = random.Random(seed)
    return [Ring(convex_points(rng, rng.randint(3, 10), rng.uniform(1, 10))) for _ in range(n)]


# --- skeleton ---------------------------------------------------------------


def test_square_skeleton():
    sk = build_straight_skeleton(Ring(UNIT_SQUARE))
    assert len(sk.events) == 1
    e = sk.events[0]
    assert e.time == pytest.approx(0.5) and e.location == pytest.approx((0.5, 0.5))
    assert len(sk.arcs) == 4
    for arc in sk.arcs:
        assert arc.b == pytest.approx((0.5, 0.5))
        assert arc.a in [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_rectangle_skeleton_has_spine():
    ring = Ring([(0, 0), (4, 0), (4, 1), (0, 1)])
    sk = build_straight_skeleton(ring)
    assert max(e.time for e in sk.events) == pytest.approx(0.5)
    spine = [a for a in sk.arcs if abs(a.a.y - 0.5) < 1e-9 and abs(a.b.y - 0.5) < 1e-9 and a.length() > 1e-9]
    xs = [x for a in spine for x in (a.a.x, a.b.x)]
    assert min(xs) == pytest.approx(0.5) and max(xs) == pytest.approx(3.5)
    # arc endpoints lie at distance t from the source boundary
    for arc, (t0, t1) in zip(sk.arcs, sk.arc_times):
        d = ring_distance([arc.a, arc.b], ring.vertices)
        assert d[0] == pytest.approx(t0, abs=1e-9) and d[1] == pytest.approx(t1, abs=1e-9)


def test_convex_skeleton_has_no_splits():
    for ring in _convex(3, 50):
        sk = build_straight_skeleton(ring)
        assert all(e.kind is EventKind.EDGE_COLLAPSE for e in sk.events)


def test_skeleton_events_sorted_and_arcs_consistent():
    for ring in _stars(4, 40):
        sk = build_straight_skeleton(ring)
        times = [e.time for e in sk.events]
        assert times == sorted(times)
        src = ring if ring.signed_area > 0 else ring.reversed()
        for arc, (t0, t1) in zip(sk.arcs, sk.arc_times):
            # a wavefront point at time t sits on at least two edge lines shifted by t
            for p, t in ((arc.a, t0), (arc.b, t1)):
                assert sum(abs(_line_distance(p, e) - t) <= 1e-7 * ring.diagonal() for e in src.edges()) >= 2


def _line_distance(p, edge):
    a, b = edge
    ln = a.distance(b)
    return ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / ln


def test_skeleton_json_shape():
    doc = build_straight_skeleton(Ring(UNIT_SQUARE)).to_json()
    assert doc["direction"] == "Inward" and len(doc["arcs"]) == 4 and doc["events"][0]["kind"] == "EdgeCollapse"


# --- offset_ring -------------------------------------------------------------


def test_square_offsets():
    (inner,) = offset_ring(Ring(UNIT_SQUARE), OffsetSpec(0.1, Direction.INWARD))
    assert inner.area == pytest.approx(0.64, abs=1e-12)
    assert sorted(map(tuple, inner.vertices)) == pytest.approx(sorted([(0.1, 0.1), (0.9, 0.1), (0.9, 0.9), (0.1, 0.9)]))
    (outer,) = offset_ring(Ring(UNIT_SQUARE), OffsetSpec(0.1, Direction.OUTWARD))
    assert outer.area == pytest.approx(1.44, abs=1e-12)
    assert outer.bbox() == pytest.approx((-0.1, -0.1, 1.1, 1.1))


def test_zero_and_negative_distance():
    assert offset_ring(Ring(UNIT_SQUARE), OffsetSpec(0.0))[0].area == 1.0
    with pytest.raises(InvalidGeometry):
        OffsetSpec(-1.0)


def _parallel_at(edge, ring, d, sign):
    (ax, ay), (bx, by) = edge
    u = np.array([bx - ax, by - ay]) / math.hypot(bx - ax, by - ay)
    hits = 0
    for p, q in ring.edges():
        w = np.array([q.x - p.x, q.y - p.y]) / p.distance(q)
        if abs(u[0] * w[1] - u[1] * w[0]) > 1e-7 or u @ w < 0:
            continue
        # signed distance of the offset edge from the source edge line (positive = left)
        dist = w[0] * (ay - p.y) - w[1] * (ax - p.x)
        if abs(dist - sign * d) <= 1e-6 * d:
            hits += 1
    return hits


@pytest.mark.parametrize("direction", [Direction.INWARD, Direction.OUTWARD])
def test_parallelism(direction):
    rng = random.Random(6)
    rings = _stars(6, 100) + _convex(7, 100)
    for ring in rings:
        d = rng.uniform(0.05, 0.8)
        src = ring if ring.signed_area > 0 else ring.reversed()
        for out in offset_ring(ring, OffsetSpec(d, direction)):
            if out.signed_area < 0:
                continue  # pocket inside a grown front
            for a, b in out.edges():
                sign = 1 if direction is Direction.INWARD else -1
                assert _parallel_at((a, b), src, d, sign) == 1


def test_offsets_are_simple():
    rng = random.Random(8)
    for ring in _stars(8, 80):
        for direction in Direction:
            for out in offset_ring(ring, OffsetSpec(rng.uniform(0.1, 2.0), direction)):
                assert simple_polygon(out.vertices)


def test_monotone_shrinkage():
    rng = random.Random(9)
    for ring in _stars(9, 60):
        d1 = rng.uniform(0.0, 1.5)
        d2 = d1 + rng.uniform(0.05, 1.5)
        outer = offset_ring(ring, OffsetSpec(d1))
        for r in offset_ring(ring, OffsetSpec(d2)):
            pts = np.asarray(r.vertices)
            assert any(np.all(winding_numbers(pts, o.vertices) != 0) for o in outer)


def test_convex_round_trip():
    rng = random.Random(10)
    for ring in _convex(10, 100):
        pts = np.asarray(ring.vertices)
        c = pts.mean(axis=0)
        inr = float(ring_distance([c], ring.vertices)[0])  # lower bound on the inradius
        d = rng.uniform(0.01, 0.5) * inr
        (grown,) = offset_ring(ring, OffsetSpec(d, Direction.OUTWARD))
        (back,) = offset_ring(grown, OffsetSpec(d, Direction.INWARD))
        tol = 1e-6 * ring.diagonal()
        assert len(back.vertices) == len(ring.vertices)
        for v in ring.vertices:
            assert min(v.distance(w) for w in back.vertices) <= tol


def test_area_rate_matches_perimeter():
    """dA/dt = -perimeter for an inward front, checked by finite differences."""
    rng = random.Random(12)
    for ring in _stars(12, 60):
        t = rng.uniform(0.1, 1.0)
        h = 1e-5
        a0 = sum(r.signed_area for r in offset_ring(ring, OffsetSpec(t - h)))
        a1 = sum(r.signed_area for r in offset_ring(ring, OffsetSpec(t + h)))
        rings = offset_ring(ring, OffsetSpec(t))
        perim = sum(p.distance(q) for r in rings for p, q in r.edges())
        if not rings:
            continue
        assert (a1 - a0) / (2 * h) == pytest.approx(-perim, rel=1e-3, abs=1e-6)


# --- offset_region -----------------------------------------------------------


def test_offset_region_square_with_hole():
    free = offset_region(s10_with_hole(), 0.5)
    assert free.outer.bbox() == pytest.approx((0.5, 0.5, 9.5, 9.5))
    assert len(free.holes) == 1 and free.holes[0].bbox() == pytest.approx((3.5, 3.5, 6.5, 6.5))
    assert free.outer.signed_area > 0 and free.holes[0].signed_area < 0
    assert free.area() == pytest.approx(81 - 9)


def test_offset_region_zero_is_identity():
    roi = s10_with_hole()
    assert offset_region(roi, 0.0) == roi


def test_offset_overlap_near_wall():
    # hole left edge at x=0.4; grown by 0.5 it reaches x=-0.1, past the shrunk wall at 0.5
    roi = region_from_rings(square(10, 5, 5), [square(2, 1.4, 5)])
    with pytest.raises(OffsetOverlap) as info:
        offset_region(roi, 0.5)
    assert info.value.indices == (0, 1)
    assert info.value.category == "geometry"


def test_offset_overlap_between_holes():
    roi = region_from_rings(square(20, 10, 10), [square(2, 7, 10), square(2, 9.5, 10)])
    with pytest.raises(OffsetOverlap) as info:
        offset_region(roi, 0.5)
    assert info.value.indices == (1, 2)


def test_region_collapse_and_split():
    with pytest.raises(RegionCollapsed):
        offset_region(region_from_rings(square(2)), 1.5)
    # dumbbell: two squares joined by a thin corridor
    bell = [(0, 0), (4, 0), (4, 1.8), (6, 1.8), (6, 0), (10, 0), (10, 4), (6, 4), (6, 2.2), (4, 2.2), (4, 4), (0, 4)]
    roi = region_from_rings(bell)
    with pytest.raises(RegionSplit) as info:
        offset_region(roi, 0.5)
    assert info.value.pieces == 2
    parts = offset_region_parts(roi, 0.5)
    assert len(parts) == 2
    assert sum(p.area() for p in parts) == pytest.approx(2 * 3 * 3)
    assert abs(shoelace(parts[0].outer.vertices)) == pytest.approx(9)
