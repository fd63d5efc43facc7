import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covplan.errors import InvalidGeometry
from covplan.geometry import (
    Location,
    Orientation,
    Point2D,
    Ring,
    RotationFrame,
    Vec2D,
    cross2,
    is_convex,
    ring_contains_point,
    rotate,
    segments_intersect,
    signed_area,
)
from shapes import L_RING, UNIT_SQUARE, ring_distance, shoelace, star_points, winding_numbers

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _random_ring(seed: int) -> Ring:
    rng = random.Random(seed)
    while True:
        try:
            return Ring(star_points(rng, rng.randint(3, 14), rng.uniform(0.1, 5), rng.uniform(5, 50), (rng.uniform(-100, 100), rng.uniform(-100, 100))))
        except InvalidGeometry:
            continue


def test_cross2_basis():
    assert cross2(Vec2D(1, 0), Vec2D(0, 1)) == 1
    assert cross2(Vec2D(0, 1), Vec2D(1, 0)) == -1
    assert cross2(Vec2D(2, 0), Vec2D(3, 0)) == 0


def test_point_vector_arithmetic():
    a, b = Point2D(1, 2), Point2D(4, 6)
    v = b - a
    assert isinstance(v, Vec2D) and v == (3, 4)
    assert a + v == b
    assert a.distance(b) == 5
    with pytest.raises(InvalidGeometry):
        Point2D(float("nan"), 0)


def test_signed_area_examples():
    assert signed_area(Ring(UNIT_SQUARE)) == 1.0
    assert signed_area(Ring(UNIT_SQUARE[::-1])) == -1.0
    assert signed_area(Ring([(0, 0), (2, 0), (0, 2)])) == 2.0
    assert Ring(UNIT_SQUARE).orientation is Orientation.CCW
    assert Ring(UNIT_SQUARE[::-1]).orientation is Orientation.CW


def test_closing_vertex_dropped():
    assert len(Ring(UNIT_SQUARE + [UNIT_SQUARE[0]]).vertices) == 4


@pytest.mark.parametrize(
    "pts",
    [
        [(0, 0), (1, 0)],
        [(0, 0), (1, 1), (1, 0), (0, 1)],  # bow tie
        [(0, 0), (1, 0), (2, 0)],  # zero area
        [(0, 0), (0, 0), (1, 0), (0, 1)],
        [(0, 0), (1, 0), (float("inf"), 1)],
    ],
)
def test_invalid_rings(pts):
    with pytest.raises(InvalidGeometry):
        Ring(pts)


def test_contains_examples():
    sq = Ring(UNIT_SQUARE)
    assert ring_contains_point(sq, (0.5, 0.5)) is Location.INSIDE
    assert ring_contains_point(sq, (2, 0.5)) is Location.OUTSIDE
    assert ring_contains_point(sq, (1, 0.5)) is Location.ON_BOUNDARY
    assert ring_contains_point(sq, (0, 0)) is Location.ON_BOUNDARY


def test_l_ring_notch_against_raster():
    ring = Ring(L_RING)
    # rasterize a fine grid around the query: the whole neighbourhood is outside the L
    g = np.linspace(1.4, 1.6, 41)
    xx, yy = np.meshgrid(g, g)
    raster = winding_numbers(np.column_stack([xx.ravel(), yy.ravel()]), L_RING)
    assert not raster.any()
    assert ring_contains_point(ring, (1.5, 1.5)) is Location.OUTSIDE
    assert ring_contains_point(ring, (0.5, 1.5)) is Location.INSIDE


def test_is_convex_examples():
    assert is_convex(Ring(UNIT_SQUARE))
    assert not is_convex(Ring(L_RING))
    assert is_convex(Ring([(0, 0), (2, 0), (0, 2)]))


def test_rotate_examples():
    p = rotate(RotationFrame(math.pi / 2), Point2D(1, 0))
    assert p.x == pytest.approx(0, abs=1e-15) and p.y == pytest.approx(1)
    assert rotate(RotationFrame(0.0), Point2D(3, 4)) == Point2D(3, 4)
    r = rotate(RotationFrame(math.pi / 4), Ring(UNIT_SQUARE))
    assert abs(shoelace(r.vertices) - 1.0) <= 1e-12


def test_segments_touching_counts():
    assert segments_intersect((0, 0), (1, 0), (1, 0), (2, 1))
    assert not segments_intersect((0, 0), (1, 0), (0, 1), (1, 1))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_reversal_negates_area(seed):
    r = _random_ring(seed)
    assert r.reversed().signed_area == -r.signed_area


def test_rotation_round_trip_1000_rings():
    rng = random.Random(11)
    for k in range(1000):
        r = _random_ring(k)
        f = RotationFrame(rng.uniform(-math.pi, math.pi), Point2D(rng.uniform(-50, 50), rng.uniform(-50, 50)))
        back = rotate(f, rotate(f.inverse(), r))
        tol = 1e-9 * r.diagonal()
        assert all(p.distance(q) <= tol for p, q in zip(back.vertices, r.vertices))


def test_contains_matches_winding_oracle():
    for k in range(100):
        r = _random_ring(10_000 + k)
        x0, y0, x1, y1 = r.bbox()
        gx, gy = np.meshgrid(np.linspace(x0 - 1, x1 + 1, 40), np.linspace(y0 - 1, y1 + 1, 40))
        pts = np.column_stack([gx.ravel(), gy.ravel()])
        keep = ring_distance(pts, r.vertices) > 2 * r.eps
        wind = winding_numbers(pts, r.vertices)
        for p, w in zip(pts[keep], wind[keep]):
            want = Location.INSIDE if w else Location.OUTSIDE
            assert ring_contains_point(r, p) is want


@settings(max_examples=150, deadline=None)
@given(seeds, st.floats(-math.pi, math.pi), st.floats(0.01, 100))
def test_is_convex_invariant(seed, theta, scale):
    r = _random_ring(seed)
    turned = rotate(RotationFrame(theta), r)
    scaled = Ring([(p.x * scale, p.y * scale) for p in r.vertices])
    assert is_convex(turned) == is_convex(r) == is_convex(scaled)
