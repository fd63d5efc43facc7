"""
A wind-aligned survey over a concave field in lon/lat
=====================================================

The field is given in geographic coordinates, projected to local metres,
planned with the wind at 45 degrees and written back out as GeoJSON, CSV
and SVG.
"""

import json
import math
from pathlib import Path

from covplan import PlannerConfig, plan_regions
from covplan.formats import emit_outputs, parse_region

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# a notched field about 600 m x 500 m near (8.54 E, 47.37 N), with a pond
lon0, lat0 = 8.54, 47.37
m_lon = 1 / (6371000 * math.cos(math.radians(lat0)) * math.pi / 180)
m_lat = 1 / (6371000 * math.pi / 180)


def lonlat(x, y):
    return [lon0 + x * m_lon, lat0 + y * m_lat]


outer = [(0, 0), (600, 0), (600, 250), (380, 250), (300, 420), (220, 250), (140, 500), (0, 500), (0, 0)]
pond = [(380, 90), (470, 90), (470, 170), (380, 170), (380, 90)]
src = OUT / "field.geojson"
src.write_text(json.dumps({"type": "Polygon", "coordinates": [[lonlat(*p) for p in outer], [lonlat(*p) for p in pond]]}))

config = PlannerConfig(
    wind_direction_deg=45,
    safe_distance_m=15,
    swath_width_m=100,
    sidelap=0.8,
    origin_lonlat=(lon0, lat0),
)
parsed = parse_region(src, config)
(plan,) = plan_regions(parsed.classified(), config)

print(f"line spacing: {plan.spacing.spacing_d:.3f} m")
print("paths:", len(plan.paths), "transitions:", len(plan.transitions))
for k, path in enumerate(plan.paths):
    a, b = path.legs()[0]
    heading = math.degrees(math.atan2(b.y - a.y, b.x - a.x)) % 180
    print(f"  path {k}: {path.line_count} legs, leg heading {heading:.6f} deg")

files = emit_outputs(plan, OUT / "wind_survey", parsed.projection)
print("wrote", ", ".join(str(p) for p in files.values()))
