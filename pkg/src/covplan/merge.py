"""Cell adjacency and constrained depth-first merging.

Two cells are adjacent when they share a partition edge (both end vertices).
Regions grow by depth-first traversal of the adjacency graph, but a neighbour
is absorbed only while the union stays sweep-monotone, so each merged region
can still be covered by a single zig-zag.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .decompose import Cell, is_monotone
from .errors import InvalidGeometry, NonSimpleUnion
from .geometry import Point2D, Ring, Segment


@dataclass(frozen=True)
class AdjacencyGraph:
    nodes: tuple[int, ...]
    edges: dict[tuple[int, int], Segment] = field(default_factory=dict)

    def neighbors(self, i: int) -> list[int]:
        out = [b if a == i else a for a, b in self.edges if i in (a, b)]
        return sorted(out)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges


@dataclass(frozen=True)
class MergedRegion:
    boundary: Ring
    member_cells: tuple[int, ...]
    partition_edges: tuple[Segment, ...] = ()


def _same_point(p: Point2D, q: Point2D, eps: float) -> bool:
    return p.distance(q) <= eps


def build_adjacency(cells: list[Cell]) -> AdjacencyGraph:
    edges: dict[tuple[int, int], Segment] = {}
    for i in range(len(cells)):
        eps = cells[i].boundary.eps
        for j in range(i + 1, len(cells)):
            for s in cells[i].partition_edges:
                for t in cells[j].partition_edges:
                    shared = sum(
                        1 for p in (s.a, s.b) if _same_point(p, t.a, eps) or _same_point(p, t.b, eps)
                    )
                    if shared >= 2:
                        edges[(i, j)] = s
                        break
                if (i, j) in edges:
                    break
    return AdjacencyGraph(tuple(range(len(cells))), edges)


def _union_boundary(cells: list[Cell], members: list[int]) -> list[Point2D] | None:
    """Boundary of the union of member cells, or None if it is not a single simple loop."""
    half = Counter()
    for m in members:
        pts = cells[m].boundary.vertices
        n = len(pts)
        for k in range(n):
            half[(pts[k], pts[(k + 1) % n])] += 1
    keep = [h for h in half if (h[1], h[0]) not in half]
    succ: dict[Point2D, Point2D] = {}
    for a, b in keep:
        if a in succ:
            return None  # pinch vertex
        succ[a] = b
    start = min(succ)
    loop = [start]
    cur = succ[start]
    while cur != start:
        if cur not in succ or len(loop) > len(succ):
            return None
        loop.append(cur)
        cur = succ[cur]
    if len(loop) != len(succ):
        return None  # several loops: the union encloses a hole
    return loop


def _cut_levels(cells: list[Cell]) -> list[float]:
    return sorted({s.a.y for c in cells for s in c.partition_edges})


def merge_components(graph: AdjacencyGraph, cells: list[Cell]) -> list[MergedRegion]:
    """Merge cells into sweep-monotone regions by constrained depth-first search.

    Traversal starts at the lowest unvisited cell index and visits neighbours
    in ascending index order; regions come back in traversal order.
    """
    n = len(cells)
    if n == 0:
        return []
    eps = cells[0].boundary.eps
    levels = _cut_levels(cells)
    visited = [False] * n
    regions = []

    def accepts(members: list[int]) -> list[Point2D] | None:
        loop = _union_boundary(cells, members)
        if loop is None:
            return None
        ring = Ring(loop, eps=eps, validate=False)
        if ring.signed_area <= 0 or not is_monotone(ring, levels):
            return None
        return loop

    for s in range(n):
        if visited[s]:
            continue
        visited[s] = True
        members = [s]
        loop = list(cells[s].boundary.vertices)

        stack = [(s, iter(graph.neighbors(s)))]
        while stack:
            node, it = stack[-1]
            for j in it:
                if visited[j]:
                    continue
                cand = accepts(members + [j])
                if cand is not None:
                    visited[j] = True
                    members.append(j)
                    loop = cand
                    stack.append((j, iter(graph.neighbors(j))))
                    break
            else:
                stack.pop()

        try:
            ring = Ring(loop, eps=eps)
        except InvalidGeometry as exc:
            raise NonSimpleUnion(f"merged region {members} is not simple: {exc}") from exc
        outline = {frozenset((loop[k], loop[(k + 1) % len(loop)])) for k in range(len(loop))}
        parts = tuple(
            p for m in members for p in cells[m].partition_edges if frozenset((p.a, p.b)) in outline
        )
        regions.append(MergedRegion(ring, tuple(members), parts))
    return regions
