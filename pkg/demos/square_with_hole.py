"""
From region to flight lines: a square field with one exclusion zone
===================================================================

Walks through every stage of the planner on the smallest interesting
input and writes an SVG of the result to ``demos/out/``.
"""

from pathlib import Path

import numpy as np

from covplan import (
    PlannerConfig,
    build_adjacency,
    find_events,
    merge_components,
    offset_region,
    partition_cells,
    region_from_rings,
    run_pipeline,
)
from covplan.formats import emit_outputs

OUT = Path(__file__).parent / "out"

# a 10 m square field with a 2 m obstacle in the middle
roi = region_from_rings(
    [(0, 0), (10, 0), (10, 10), (0, 10)],
    [[(4, 4), (6, 4), (6, 6), (4, 6)]],
)
print("field area:", roi.area())

# keep half a metre from walls and obstacle
free = offset_region(roi, 0.5)
print("free-space outer bbox:", free.outer.bbox())
print("grown obstacle bbox: ", free.holes[0].bbox())

# wind along +x, so flight lines run along y
config = PlannerConfig(wind_direction_deg=0, safe_distance_m=0.5, swath_width_m=1.0, sidelap=0.0)
frame = config.sweep_frame()
print("sweep angle:", frame.sweep_angle)

events = find_events(free, frame)
for e in events:
    print(f"  {e.kind.value:5s} at frame y = {e.y:+.3f}")

cells = partition_cells(free, events, frame)
print("cells:", len(cells), "areas:", np.round([c.boundary.area for c in cells], 3))

regions = merge_components(build_adjacency(cells), cells)
print("merged regions:", [r.member_cells for r in regions])



def xy(p):
    return f"({p[0]:.3f}, {p[1]:.3f})"


plan = run_pipeline(roi, config)
for k, path in enumerate(plan.paths):
    print(f"path {k}: {path.line_count} lines, starts at {xy(path.waypoints[0])}")
# the transition bends around a corner of the grown obstacle
for k, t in enumerate(plan.transitions):
    print(f"transition {k}:", " -> ".join(xy(p) for p in t))

files = emit_outputs(plan, OUT / "square_with_hole")
print("wrote", ", ".join(str(p) for p in files.values()))
