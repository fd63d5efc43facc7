import csv
import json
import math
import random

import pytest

from covplan.cli import main
from covplan.errors import IoError, OpenChain, ParseError
from covplan.formats import LocalProjection, emit_outputs, load_plan_geojson, parse_region
from covplan.pipeline import PlannerConfig, run_pipeline
from covplan.regions import region_from_rings
from shapes import s10_with_hole, square


def _closed(ring):
    return [list(p) for p in ring] + [list(ring[0])]


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_geojson_polygon_with_hole(tmp_path):
    p = _write(tmp_path, "r.geojson", {"type": "Polygon", "coordinates": [_closed(square(10)), _closed(square(2))]})
    parsed = parse_region(p)
    assert parsed.chains is None and parsed.projection is None
    (roi,) = parsed.classified()
    assert roi.outer.area == pytest.approx(100) and len(roi.holes) == 1


def test_geojson_feature_collection_is_classified(tmp_path):
    feats = [
        {"type": "Feature", "properties": {}, "geometry": {"type": "Polygon", "coordinates": [_closed(r)]}}
        for r in (square(2), square(10), square(6))
    ]
    parsed = parse_region(_write(tmp_path, "fc.geojson", {"type": "FeatureCollection", "features": feats}))
    assert len(parsed.chains.chains) == 3
    rois = parsed.classified()
    assert [len(r.holes) for r in rois] == [1, 0]


def test_csv_concentric_blocks(tmp_path):
    text = "# outer\n" + "\n".join(f"{x},{y}" for x, y in _closed(square(10)))
    text += "\n\n" + "\n".join(f"{x},{y}" for x, y in _closed(square(2))) + "\n"
    parsed = parse_region(_write(tmp_path, "r.csv", text))
    assert len(parsed.chains.chains) == 2
    (roi,) = parsed.classified()
    assert len(roi.holes) == 1


def test_csv_open_chain(tmp_path):
    text = "\n".join(f"{x},{y}" for x, y in square(10))
    with pytest.raises(OpenChain):
        parse_region(_write(tmp_path, "r.csv", text))


@pytest.mark.parametrize(
    "content",
    ["{not json", json.dumps({"type": "Point", "coordinates": [0, 0]}), json.dumps({"type": "Polygon", "coordinates": [[[0, 0], [1, "a"]]]})],
)
def test_parse_errors(tmp_path, content):
    with pytest.raises(ParseError):
        parse_region(_write(tmp_path, "bad.geojson", content))


def test_self_intersecting_input_is_parse_error(tmp_path):
    bow = [[0, 0], [1, 1], [1, 0], [0, 1], [0, 0]]
    with pytest.raises(ParseError):
        parse_region(_write(tmp_path, "bow.geojson", {"type": "Polygon", "coordinates": [bow]}))


def test_lonlat_projection_scale(tmp_path):
    ring = [[0, 0], [0.001, 0], [0.001, 0.001], [0, 0.001], [0, 0]]
    parsed = parse_region(_write(tmp_path, "g.geojson", {"type": "Polygon", "coordinates": [ring]}), PlannerConfig(origin_lonlat=(0, 0)))
    xs = sorted(p.x for p in parsed.regions[0].outer.vertices)
    assert xs[-1] == pytest.approx(6371000 * math.radians(0.001))
    assert xs[-1] == pytest.approx(111.19, abs=5e-3)


def test_projection_round_trip():
    rng = random.Random(4)
    for _ in range(1000):
        origin = (rng.uniform(-180, 180), rng.uniform(-70, 70))
        proj = LocalProjection(origin)
        lon, lat = origin[0] + rng.uniform(-0.5, 0.5), origin[1] + rng.uniform(-0.5, 0.5)
        back = proj.unproject(*proj.project(lon, lat))
        assert abs(back[0] - lon) <= 1e-9 and abs(back[1] - lat) <= 1e-9


def _plan():
    cfg = PlannerConfig(wind_direction_deg=0, safe_distance_m=0.5, swath_width_m=1.0, sidelap=0.0)
    return run_pipeline(s10_with_hole(), cfg)


def test_emit_one_path(tmp_path):
    plan = run_pipeline(region_from_rings(square(10, 5, 5)), PlannerConfig(safe_distance_m=0.5, swath_width_m=1, sidelap=0))
    files = emit_outputs(plan, tmp_path / "one")
    doc = json.loads(files["geojson"].read_text())
    assert [f["geometry"]["type"] for f in doc["features"]] == ["LineString"]
    assert doc["features"][0]["properties"] == {"kind": "path", "index": 0, "line_count": plan.paths[0].line_count}
    with open(files["csv"], newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == len(plan.paths[0].waypoints)
    assert list(rows[0]) == ["path_index", "waypoint_index", "x", "y"]


def test_emit_counts_transitions(tmp_path):
    plan = _plan()
    doc = json.loads(emit_outputs(plan, tmp_path / "p")["geojson"].read_text())
    kinds = [f["properties"]["kind"] for f in doc["features"]]
    assert kinds.count("path") == len(plan.paths) == 2
    assert kinds.count("transition") == len(plan.transitions) == 1
    assert all(f["properties"]["line_count"] is None for f in doc["features"] if f["properties"]["kind"] == "transition")


def test_emit_projected_round_trip(tmp_path):
    plan = _plan()
    proj = LocalProjection((8.5, 47.3))
    files = emit_outputs(plan, tmp_path / "g", proj)
    header = files["csv"].read_text().splitlines()[0]
    assert header == "path_index,waypoint_index,x,y,lon,lat"
    paths, transitions = load_plan_geojson(files["geojson"], proj)
    for got, p in zip(paths, plan.paths):
        assert all(math.dist(u, v) <= 1e-9 for u, v in zip(got, p.route()))


def test_svg_has_viewport_and_dashes(tmp_path):
    svg = emit_outputs(_plan(), tmp_path / "s")["svg"].read_text()
    assert 'viewBox="0 0 1000 1000"' in svg and "stroke-dasharray" in svg


def test_emit_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(IoError):
        emit_outputs(_plan(), blocker / "sub" / "p")


# --- CLI ---------------------------------------------------------------------


def _roi_file(tmp_path, hole_center=(5, 5)):
    return _write(
        tmp_path, "roi.geojson", {"type": "Polygon", "coordinates": [_closed(square(10, 5, 5)), _closed(square(2, *hole_center))]}
    )


def _args(src, out, safe="0.5", extra=()):
    return ["--input", str(src), "--wind-deg", "0", "--safe-dist", safe, "--swath", "1", "--sidelap", "0", "--out", str(out), *extra]


def test_cli_success(tmp_path, capsys):
    assert main(_args(_roi_file(tmp_path), tmp_path / "o" / "plan")) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["paths"] == [2] and summary["transitions"] == [1]
    for ext in ("geojson", "csv", "svg"):
        assert (tmp_path / "o" / f"plan.{ext}").exists()


def test_cli_geometry_error_exit_3(tmp_path, capsys):
    assert main(_args(_roi_file(tmp_path), tmp_path / "plan", safe="6")) == 3
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "RegionCollapsed" and err["category"] == "geometry"


def test_cli_overlap_exit_3(tmp_path, capsys):
    assert main(_args(_roi_file(tmp_path, (1.4, 5)), tmp_path / "plan")) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "OffsetOverlap"


def test_cli_input_errors_exit_2(tmp_path, capsys):
    bad = _write(tmp_path, "bad.geojson", "{oops")
    assert main(_args(bad, tmp_path / "plan")) == 2
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and json.loads(err[0])["error"] == "ParseError"
    assert main(_args(_roi_file(tmp_path), tmp_path / "plan", extra=("--sidelap", "1.2"))) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "ConfigError"
    assert main(_args(tmp_path / "missing.geojson", tmp_path / "plan")) == 2


def test_cli_debug_skeleton(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("COVPLAN_DEBUG_SKELETON", "1")
    assert main(_args(_roi_file(tmp_path), tmp_path / "d" / "plan")) == 0
    doc = json.loads((tmp_path / "d" / "plan.skeleton.json").read_text())
    assert [s["direction"] for s in doc["skeletons"]] == ["Inward", "Outward"]


def test_cli_deterministic(tmp_path, capsys):
    src = _roi_file(tmp_path)
    outs = []
    for k in range(2):
        assert main(_args(src, tmp_path / str(k) / "plan", extra=("--first-line", "centered"))) == 0
        outs.append([(tmp_path / str(k) / f"plan.{e}").read_bytes() for e in ("geojson", "csv", "svg")])
    assert outs[0] == outs[1]


def test_cli_split_region_writes_numbered_plans(tmp_path, capsys):
    bell = [(0, 0), (4, 0), (4, 1.8), (6, 1.8), (6, 0), (10, 0), (10, 4), (6, 4), (6, 2.2), (4, 2.2), (4, 4), (0, 4)]
    src = _write(tmp_path, "bell.geojson", {"type": "Polygon", "coordinates": [_closed(bell)]})
    assert main(_args(src, tmp_path / "b")) == 0
    assert json.loads(capsys.readouterr().out)["plans"] == 2
    assert (tmp_path / "b_0.geojson").exists() and (tmp_path / "b_1.geojson").exists()
