"""Coverage path planning for UAV surveys of concave regions with exclusion zones.

Typical use::

    from covplan import PlannerConfig, region_from_rings, run_pipeline

    roi = region_from_rings(outer_xy, [hole_xy])
    plan = run_pipeline(roi, PlannerConfig(wind_direction_deg=45, safe_distance_m=5,
                                           swath_width_m=100, sidelap=0.8))
"""

from .decompose import Cell, EventPoint, SweepFrame, find_events, partition_cells, sweep_angle_from_wind
from .errors import CovplanError
from .formats import LocalProjection, emit_outputs, parse_region
from .geometry import (
    Location,
    Orientation,
    Point2D,
    Ring,
    RotationFrame,
    Segment,
    Vec2D,
    cross2,
    is_convex,
    ring_contains_point,
    rotate,
    signed_area,
)
from .merge import AdjacencyGraph, MergedRegion, build_adjacency, merge_components
from .offset import Direction, OffsetSpec, StraightSkeleton, build_straight_skeleton, offset_region, offset_ring
from .paths import (
    BoustrophedonPath,
    CoveragePlan,
    FirstLineMode,
    SpacingSpec,
    generate_zigzag,
    line_family_world,
    link_paths,
    spacing_from_overlap,
    to_world,
)
from .pipeline import PlannerConfig, plan_regions, run_pipeline
from .regions import ChainSet, RegionOfInterest, classify_chains, containment_matrix, region_from_rings

__all__ = [name for name in dir() if not name.startswith("_")]
