"""Command line entry point: ``covplan --input region.geojson ... --out plan``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import CovplanError, IoError
from .formats import emit_outputs, parse_region
from .offset import Direction, build_straight_skeleton
from .paths import FirstLineMode
from .pipeline import PlannerConfig, plan_regions

EXIT_INPUT = 2
EXIT_GEOMETRY = 3


def _lonlat(text: str) -> tuple[float, float]:
    try:
        lon, lat = (float(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 'lon,lat', got {text!r}") from exc
    return lon, lat


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="covplan", description="Wind-aligned boustrophedon survey paths around exclusion zones."
    )
    p.add_argument("--input", required=True, help="region file (.geojson/.json or .csv)")
    p.add_argument("--wind-deg", type=float, required=True, help="wind direction, degrees CCW from +x")
    p.add_argument("--sweep-deg", type=float, default=None, help="override the sweep-line angle (degrees)")
    p.add_argument("--safe-dist", type=float, required=True, help="standoff from boundaries and holes (m)")
    p.add_argument("--swath", type=float, required=True, help="across-track image footprint (m)")
    p.add_argument("--sidelap", type=float, required=True, help="overlap between adjacent swaths, in [0, 1)")
    p.add_argument("--first-line", choices=[m.value for m in FirstLineMode], default=FirstLineMode.PAPER.value)
    p.add_argument("--origin", type=_lonlat, default=None, help="lon,lat origin; implies geographic input")
    p.add_argument("--geographic", action="store_true", help="input is lon/lat; origin at the vertex mean")
    p.add_argument("--out", required=True, help="output prefix")
    return p


def _fail(exc: CovplanError) -> int:
    print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
    return EXIT_INPUT if exc.category == "input" else EXIT_GEOMETRY


def _dump_skeletons(regions, config: PlannerConfig, prefix: Path) -> None:
    out = []
    for k, roi in enumerate(regions):
        sk = build_straight_skeleton(roi.outer, Direction.INWARD)
        out.append({"region": k, "ring": 0, **sk.to_json()})
        for i, h in enumerate(roi.holes, start=1):
            sk = build_straight_skeleton(h, Direction.OUTWARD, max_time=max(config.safe_distance_m, 1e-9))
            out.append({"region": k, "ring": i, **sk.to_json()})
    target = prefix.with_name(prefix.name + ".skeleton.json")
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps({"skeletons": out}) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {target}: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = PlannerConfig(
            wind_direction_deg=args.wind_deg,
            safe_distance_m=args.safe_dist,
            swath_width_m=args.swath,
            sidelap=args.sidelap,
            first_line_mode=FirstLineMode(args.first_line),
            sweep_angle_override_deg=args.sweep_deg,
            origin_lonlat=args.origin,
            geographic=args.geographic,
        )
        parsed = parse_region(args.input, config)
        regions = parsed.classified()
        prefix = Path(args.out)
        if os.environ.get("COVPLAN_DEBUG_SKELETON") == "1":
            _dump_skeletons(regions, config, prefix)
        plans = plan_regions(regions, config)
        written = []
        for k, plan in enumerate(plans):
            pre = prefix if len(plans) == 1 else prefix.with_name(f"{prefix.name}_{k}")
            written.extend(str(p) for p in emit_outputs(plan, pre, parsed.projection).values())
    except CovplanError as exc:
        return _fail(exc)
    summary = {
        "plans": len(plans),
        "paths": [len(p.paths) for p in plans],
        "transitions": [len(p.transitions) for p in plans],
        "files": written,
    }
    print(json.dumps(summary))
    return 0


if __name__ == "__main__":
    sys.exit(main())
