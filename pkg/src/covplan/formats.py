"""Reading regions and writing plans (GeoJSON, CSV, SVG).

Inputs come in two flavours. A GeoJSON ``Polygon``/``MultiPolygon`` already
separates outer rings from holes and is used as is. A GeoJSON
``FeatureCollection`` of rings, or a CSV file of blank-line separated
``x,y`` blocks, is a flat set of chains that still needs classifying.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidGeometry, IoError, OpenChain, ParseError
from .geometry import EPS_REL, Point2D, Ring, bbox_diagonal
from .paths import CoveragePlan
from .regions import ChainSet, RegionOfInterest, classify_chains, region_from_rings

EARTH_RADIUS_M = 6371000.0


@dataclass(frozen=True)
class LocalProjection:
    """Equirectangular tangent projection about ``origin`` (lon, lat in degrees)."""

    origin: tuple[float, float]
    earth_radius: float = EARTH_RADIUS_M

    def project(self, lon: float, lat: float) -> tuple[float, float]:
        lon0, lat0 = self.origin
        x = self.earth_radius * math.cos(math.radians(lat0)) * math.radians(lon - lon0)
        y = self.earth_radius * math.radians(lat - lat0)
        return x, y

    def unproject(self, x: float, y: float) -> tuple[float, float]:
        lon0, lat0 = self.origin
        lon = lon0 + math.degrees(x / (self.earth_radius * math.cos(math.radians(lat0))))
        lat = lat0 + math.degrees(y / self.earth_radius)
        return lon, lat


@dataclass(frozen=True)
class ParsedInput:
    """Parsed region file: either explicit regions or a flat chain set."""

    regions: tuple[RegionOfInterest, ...] | None = None
    chains: ChainSet | None = None
    projection: LocalProjection | None = None

    def classified(self) -> list[RegionOfInterest]:
        if self.regions is not None:
            return list(self.regions)
        return classify_chains(self.chains)


def _close(coords: list[tuple[float, float]], where: str, require_closed: bool = True) -> list[tuple[float, float]]:
    if len(coords) < 2:
        raise ParseError(f"{where}: too few coordinates")
    eps = EPS_REL * bbox_diagonal(coords)
    gap = math.hypot(coords[0][0] - coords[-1][0], coords[0][1] - coords[-1][1])
    if gap > eps:
        if require_closed:
            raise OpenChain(f"{where}: chain is not closed (gap {gap:g})")
        return coords
    return coords[:-1]


def _coords(raw, where: str) -> list[tuple[float, float]]:
    try:
        out = [(float(c[0]), float(c[1])) for c in raw]
    except (TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"{where}: bad coordinate list") from exc
    if not all(math.isfinite(v) for p in out for v in p):
        raise ParseError(f"{where}: non-finite coordinate")
    return out


def _read_geojson(doc) -> tuple[list[list[list]], list[list]]:
    """Return (explicit polygons as [outer, *holes], flat chains)."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise ParseError("not a GeoJSON object")
    kind = doc["type"]
    if kind == "Feature":
        return _read_geojson(doc.get("geometry") or {})
    if kind == "Polygon":
        return [[_coords(r, "Polygon ring") for r in doc["coordinates"]]], []
    if kind == "MultiPolygon":
        return [[_coords(r, "MultiPolygon ring") for r in poly] for poly in doc["coordinates"]], []
    if kind == "FeatureCollection":
        chains = []
        for k, feat in enumerate(doc.get("features", [])):
            geom = (feat or {}).get("geometry") or {}
            gt = geom.get("type")
            if gt == "LineString":
                chains.append(_coords(geom["coordinates"], f"feature {k}"))
            elif gt == "Polygon":
                chains.extend(_coords(r, f"feature {k}") for r in geom["coordinates"])
            elif gt == "MultiPolygon":
                chains.extend(_coords(r, f"feature {k}") for p in geom["coordinates"] for r in p)
            else:
                raise ParseError(f"feature {k}: unsupported geometry {gt!r}")
        return [], chains
    raise ParseError(f"unsupported GeoJSON type {kind!r}")


def _read_csv(text: str) -> list[list[tuple[float, float]]]:
    blocks: list[list[tuple[float, float]]] = [[]]
    for lineno, row in enumerate(csv.reader(_io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            if blocks[-1]:
                blocks.append([])
            continue
        if row[0].lstrip().startswith("#"):
            continue
        try:
            blocks[-1].append((float(row[0]), float(row[1])))
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {lineno}: expected 'x,y', got {row!r}") from exc
    return [b for b in blocks if b]


def parse_region(path, config=None) -> ParsedInput:
    """Read a region file (``.geojson``/``.json`` or ``.csv``).

    Coordinates are treated as lon/lat and projected to local meters when
    ``config.origin_lonlat`` is set or ``config.geographic`` is true (origin
    defaults to the mean of all input vertices).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() in (".geojson", ".json"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from exc
        try:
            polygons, chains = _read_geojson(doc)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{path}: malformed GeoJSON ({exc})") from exc
    else:
        polygons, chains = [], _read_csv(text)
    if not polygons and not chains:
        raise ParseError(f"{path}: no geometry found")

    projection = None
    origin = getattr(config, "origin_lonlat", None)
    if origin is not None or getattr(config, "geographic", False):
        if origin is None:
            allpts = [p for poly in polygons for r in poly for p in r] + [p for c in chains for p in c]
            origin = (sum(p[0] for p in allpts) / len(allpts), sum(p[1] for p in allpts) / len(allpts))
        projection = LocalProjection((float(origin[0]), float(origin[1])))

    def to_ring(coords, where):
        coords = _close(coords, where)
        if projection is not None:
            coords = [projection.project(*p) for p in coords]
        try:
            return Ring(coords)
        except InvalidGeometry as exc:
            raise ParseError(f"{where}: {exc}") from exc

    try:
        if polygons:
            regions = []
            for k, poly in enumerate(polygons):
                rings = [to_ring(r, f"polygon {k} ring {i}") for i, r in enumerate(poly)]
                regions.append(region_from_rings(rings[0], rings[1:]))
            return ParsedInput(regions=tuple(regions), projection=projection)
        rings = [to_ring(c, f"chain {k}") for k, c in enumerate(chains)]
        return ParsedInput(chains=ChainSet(tuple(rings)), projection=projection)
    except InvalidGeometry as exc:
        raise ParseError(f"{path}: {exc}") from exc


# --- output --------------------------------------------------------------


def _xy(p, projection: LocalProjection | None) -> list[float]:
    if projection is None:
        return [p[0], p[1]]
    return list(projection.unproject(p[0], p[1]))


def plan_geojson(plan: CoveragePlan, projection: LocalProjection | None = None) -> dict:
    features = []
    for k, path in enumerate(plan.paths):
        features.append(
            {
                "type": "Feature",
                "properties": {"kind": "path", "index": k, "line_count": path.line_count},
                "geometry": {"type": "LineString", "coordinates": [_xy(p, projection) for p in path.route()]},
            }
        )
    for k, tr in enumerate(plan.transitions):
        features.append(
            {
                "type": "Feature",
                "properties": {"kind": "transition", "index": k, "line_count": None},
                "geometry": {"type": "LineString", "coordinates": [_xy(p, projection) for p in tr]},
            }
        )
    return {"type": "FeatureCollection", "features": features}


def plan_csv(plan: CoveragePlan, projection: LocalProjection | None = None) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["path_index", "waypoint_index", "x", "y"]
    if projection is not None:
        header += ["lon", "lat"]
    w.writerow(header)
    for k, path in enumerate(plan.paths):
        for i, p in enumerate(path.route()):
            row = [k, i, repr(p.x), repr(p.y)]
            if projection is not None:
                lon, lat = projection.unproject(p.x, p.y)
                row += [repr(lon), repr(lat)]
            w.writerow(row)
    return buf.getvalue()


_PATH_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2")


def plan_svg(plan: CoveragePlan, size: float = 1000.0, margin: float = 20.0) -> str:
    """Render the plan in a fixed ``size`` x ``size`` viewport, y axis pointing up."""
    rings = []
    if plan.source_region is not None:
        rings += plan.source_region.rings()
    if plan.region is not None:
        rings += plan.region.rings()
    pts = [p for r in rings for p in r.vertices]
    pts += [p for path in plan.paths for p in path.route()]
    pts += [p for t in plan.transitions for p in t]
    x0 = min(p[0] for p in pts)
    x1 = max(p[0] for p in pts)
    y0 = min(p[1] for p in pts)
    y1 = max(p[1] for p in pts)
    scale = (size - 2 * margin) / max(x1 - x0, y1 - y0, 1e-12)

    def sxy(p) -> str:
        return f"{margin + (p[0] - x0) * scale:.3f},{size - margin - (p[1] - y0) * scale:.3f}"

    def poly(pts_, **attrs) -> str:
        a = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        return f'<polygon points="{" ".join(sxy(p) for p in pts_)}" {a}/>'

    def line(pts_, **attrs) -> str:
        a = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        return f'<polyline points="{" ".join(sxy(p) for p in pts_)}" fill="none" {a}/>'

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" '
        f'viewBox="0 0 {size:g} {size:g}">',
        f'<rect x="0" y="0" width="{size:g}" height="{size:g}" fill="white"/>',
    ]
    if plan.source_region is not None:
        out.append(poly(plan.source_region.outer.vertices, fill="#f4f1e8", stroke="black", stroke_width=2))
    if plan.region is not None:
        out.append(poly(plan.region.outer.vertices, fill="none", stroke="#888888", stroke_dasharray="4,4"))
        for h in plan.region.holes:
            out.append(poly(h.vertices, fill="#e8a0a0", fill_opacity="0.6", stroke="#b03030"))
    if plan.source_region is not None:
        for h in plan.source_region.holes:
            out.append(poly(h.vertices, fill="#603030", stroke="black"))
    for k, path in enumerate(plan.paths):
        out.append(line(path.route(), stroke=_PATH_COLORS[k % len(_PATH_COLORS)], stroke_width=1.5))
    for tr in plan.transitions:
        out.append(line(tr, stroke="black", stroke_width=1.5, stroke_dasharray="8,5"))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_outputs(plan: CoveragePlan, out_prefix, projection: LocalProjection | None = None) -> dict[str, Path]:
    """Write ``<prefix>.geojson``, ``<prefix>.csv`` and ``<prefix>.svg``."""
    prefix = Path(out_prefix)
    files = {
        "geojson": (prefix.with_name(prefix.name + ".geojson"), json.dumps(plan_geojson(plan, projection)) + "\n"),
        "csv": (prefix.with_name(prefix.name + ".csv"), plan_csv(plan, projection)),
        "svg": (prefix.with_name(prefix.name + ".svg"), plan_svg(plan)),
    }
    written = {}
    for key, (p, text) in files.items():
        try:
            p.parent.mkdir(parents=True, exist_ok=True)
            with open(p, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot write {p}: {exc}") from exc
        written[key] = p
    return written


def load_plan_geojson(path, projection: LocalProjection | None = None):
    """Read back an emitted plan: ``(paths, transitions)`` as lists of point lists."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read plan {path}: {exc}") from exc
    paths: dict[int, list[Point2D]] = {}
    transitions: dict[int, list[Point2D]] = {}
    for feat in doc.get("features", []):
        props = feat["properties"]
        coords = feat["geometry"]["coordinates"]
        if projection is not None:
            pts = [Point2D(*projection.project(c[0], c[1])) for c in coords]
        else:
            pts = [Point2D(c[0], c[1]) for c in coords]
        target = paths if props["kind"] == "path" else transitions
        target[props["index"]] = pts
    return [paths[k] for k in sorted(paths)], [transitions[k] for k in sorted(transitions)]


def load_plan_csv(path) -> list[list[Point2D]]:
    paths: dict[int, list[Point2D]] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            paths.setdefault(int(row["path_index"]), []).append(Point2D(float(row["x"]), float(row["y"])))
    return [paths[k] for k in sorted(paths)]
