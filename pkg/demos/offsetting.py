"""
Shrinking and growing polygons with a straight skeleton
=======================================================

Offsets keep sharp corners: every edge slides along its normal at unit
speed and the corners follow the bisectors.
"""

import math

from covplan import Direction, OffsetSpec, Ring, build_straight_skeleton, offset_ring

square = Ring([(0, 0), (1, 0), (1, 1), (0, 1)])
for d in (0.1, 0.25, 0.45):
    (inner,) = offset_ring(square, OffsetSpec(d))
    print(f"square inward {d}: area {inner.area:.4f} (expected {(1 - 2 * d) ** 2:.4f})")

(grown,) = offset_ring(square, OffsetSpec(0.1, Direction.OUTWARD))
print("square outward 0.1: bbox", grown.bbox())

# the rectangle's skeleton has a spine along its middle
rect = Ring([(0, 0), (4, 0), (4, 1), (0, 1)])
sk = build_straight_skeleton(rect)
print("rectangle events:", [(e.kind.value, round(e.time, 3), tuple(e.location)) for e in sk.events])
print("rectangle arcs:", len(sk.arcs))
print("rectangle inward 0.5:", offset_ring(rect, OffsetSpec(0.5)))

# an equilateral triangle keeps its shape while it shrinks
tri = Ring([(0, 0), (2, 0), (1, math.sqrt(3))])
(small,) = offset_ring(tri, OffsetSpec(0.2))
sides = [round(a.distance(b), 6) for a, b in small.edges()]
print("triangle sides after 0.2:", sides, "expected", round(2 - 2 * math.sqrt(3) * 0.2, 6))

# a concave ring pinches into two pieces
bell = Ring([(0, 0), (4, 0), (4, 1.8), (6, 1.8), (6, 0), (10, 0), (10, 4), (6, 4), (6, 2.2), (4, 2.2), (4, 4), (0, 4)])
pieces = offset_ring(bell, OffsetSpec(0.5))
print("dumbbell inward 0.5 ->", len(pieces), "pieces, areas", [round(p.area, 6) for p in pieces])
