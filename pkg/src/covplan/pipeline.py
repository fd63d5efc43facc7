"""End-to-end planning: offset, decompose, merge, zig-zag, link."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .decompose import SweepFrame, find_events, partition_cells, sweep_angle_from_wind
from .errors import ConfigError, EmptyPath
from .merge import build_adjacency, merge_components
from .offset import offset_region, offset_region_parts
from .paths import CoveragePlan, FirstLineMode, generate_zigzag, link_paths, spacing_from_overlap, to_world
from .regions import ChainSet, RegionOfInterest, classify_chains

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlannerConfig:
    wind_direction_deg: float = 0.0
    safe_distance_m: float = 0.0
    swath_width_m: float = 1.0
    sidelap: float = 0.8
    first_line_mode: FirstLineMode = FirstLineMode.PAPER
    sweep_angle_override_deg: float | None = None
    origin_lonlat: tuple[float, float] | None = None
    geographic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "first_line_mode", FirstLineMode(self.first_line_mode))
        for name in ("wind_direction_deg", "safe_distance_m", "swath_width_m", "sidelap"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if self.safe_distance_m < 0:
            raise ConfigError(f"safe distance must be >= 0, got {self.safe_distance_m}")
        if self.swath_width_m <= 0:
            raise ConfigError(f"swath width must be > 0, got {self.swath_width_m}")
        if not 0 <= self.sidelap < 1:
            raise ConfigError(f"sidelap must be in [0, 1), got {self.sidelap}")

    def sweep_frame(self) -> SweepFrame:
        if self.sweep_angle_override_deg is not None:
            return SweepFrame.from_sweep_angle(self.sweep_angle_override_deg)
        return sweep_angle_from_wind(self.wind_direction_deg)


def plan_offset_region(
    free: RegionOfInterest, source: RegionOfInterest, config: PlannerConfig
) -> CoveragePlan:
    """Plan paths inside an already offset region ``free``; ``source`` is the original."""
    frame = config.sweep_frame()
    spacing = spacing_from_overlap(config.swath_width_m, config.sidelap, config.first_line_mode)
    cells = partition_cells(free, find_events(free, frame), frame)
    regions = merge_components(build_adjacency(cells), cells)
    paths = []
    for region in regions:
        try:
            paths.append(generate_zigzag(region, spacing))
        except EmptyPath:
            log.warning("region %s is thinner than the line spacing; skipped", region.member_cells)
    if not paths:
        raise EmptyPath("no sweep line fits in any region")
    plan = link_paths(
        paths,
        free.transformed(frame.rotation),
        frame,
        spacing,
        config.safe_distance_m,
        source.transformed(frame.rotation),
    )
    return to_world(plan, frame)


def run_pipeline(roi: RegionOfInterest, config: PlannerConfig) -> CoveragePlan:
    """Plan one region end to end; raises ``RegionSplit`` if the offset breaks it apart."""
    return plan_offset_region(offset_region(roi, config.safe_distance_m), roi, config)


def plan_regions(regions, config: PlannerConfig) -> list[CoveragePlan]:
    """Plan every region of a parsed input, one plan per connected free-space piece.

    ``regions`` may be a ChainSet (classified first), a single region or a
    list of regions.
    """
    if isinstance(regions, ChainSet):
        regions = classify_chains(regions)
    elif isinstance(regions, RegionOfInterest):
        regions = [regions]
    plans = []
    for roi in regions:
        for piece in offset_region_parts(roi, config.safe_distance_m):
            plans.append(plan_offset_region(piece, roi, config))
    return plans
