"""Session configuration for the event service and CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .calibration import CalibrationTargetSpec
from .dwell import DwellConfig
from .menu import Catalog
from .pipeline import PipelineConfig
from .ratios import RatioBounds
from .segmentation import SegmentationParams
from .zones import CentralArea, ScreenGeometry

DEFAULT_PORT = int(os.environ.get("GAZEKIOSK_PORT", "8876"))

SOURCES = ("camera", "frame-dir", "ratio-trace")


@dataclass
class SessionConfig:
    source: str = "ratio-trace"
    trace_path: Optional[str] = None  # ratio-trace source
    frame_dir: Optional[str] = None  # frame-dir source
    landmark_trace: Optional[str] = None  # landmark playback for frame-dir
    camera_index: int = 0
    port: int = DEFAULT_PORT
    log_path: Optional[str] = None
    realtime: bool = False  # pace delivery by sample timestamps

    dwell_ms: int = 1000
    grace_ms: int = 0
    area_preset: str = "medium"
    area_w: Optional[float] = None
    area_l: Optional[float] = None
    screen: ScreenGeometry = field(default_factory=ScreenGeometry)
    segmentation: SegmentationParams = field(default_factory=SegmentationParams)
    bounds: RatioBounds = field(default_factory=RatioBounds)
    mirror: bool = False
    swap_eyes: bool = False
    crop_margin: int = 5
    profile: Optional[tuple[float, float]] = None
    mode: str = "kiosk"
    targets: tuple[str, ...] = ()
    catalog_path: Optional[str] = None
    emit_gaze: bool = False

    def validate(self) -> None:
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")
        if self.source == "ratio-trace":
            if not self.trace_path:
                raise ValueError("ratio-trace source needs --trace")
            _require_file(self.trace_path)
        if self.source == "frame-dir":
            if not self.frame_dir or not self.landmark_trace:
                raise ValueError("frame-dir source needs --frame-dir and --landmarks")
            if not Path(self.frame_dir).is_dir():
                raise ValueError(f"not a directory: {self.frame_dir}")
            _require_file(self.landmark_trace)
        if self.catalog_path:
            _require_file(self.catalog_path)

    def area(self) -> CentralArea:
        if self.area_w is not None and self.area_l is not None:
            return CentralArea(w=self.area_w, l=self.area_l)
        return CentralArea.preset(self.area_preset)

    def load_catalog(self) -> Catalog:
        if self.catalog_path:
            return Catalog.from_file(self.catalog_path)
        return Catalog.default()

    def pipeline_config(self) -> PipelineConfig:
        return PipelineConfig(
            bounds=self.bounds,
            area=self.area(),
            dwell=DwellConfig(threshold_ms=self.dwell_ms, grace_ms=self.grace_ms),
            screen=self.screen,
            calibration=CalibrationTargetSpec(),
            profile=self.profile,
            mode=self.mode,
            targets=tuple(self.targets),
            catalog=self.load_catalog(),
            emit_gaze=self.emit_gaze,
        )

    def describe(self) -> dict:
        return {
            "source": self.source,
            "dwell_ms": self.dwell_ms,
            "grace_ms": self.grace_ms,
            "area": vars(self.area()),
            "screen": {"width_px": self.screen.width_px, "height_px": self.screen.height_px},
            "mode": self.mode,
            "mirror": self.mirror,
            "swap_eyes": self.swap_eyes,
            "emit_gaze": self.emit_gaze,
        }


def _require_file(path: str) -> None:
    if not Path(path).is_file():
        raise ValueError(f"file not found: {path}")
