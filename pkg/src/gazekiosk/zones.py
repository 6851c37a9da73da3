"""Five-zone gaze classification: a central rectangle around the personal
center plus the four directional regions outside it.

Outside the rectangle, the winning axis is the one with the larger
normalized excess beyond its half-extent; horizontal wins exact ties. The
rule is scale-free across rectangle presets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .calibration import CalibrationProfile
from .ratios import GazeSample


class Zone(enum.Enum):
    CENTER = "center"
    LEFT = "left"
    RIGHT = "right"
    UP = "up"
    DOWN = "down"


DIRECTIONS = (Zone.LEFT, Zone.RIGHT, Zone.UP, Zone.DOWN)

AREA_PRESETS = {
    "small": (0.16, 0.09),
    "medium": (0.20, 0.12),
    "large": (0.24, 0.16),
    "pilot": (0.40, 0.20),
}


@dataclass(frozen=True)
class CentralArea:
    w: float
    l: float  # noqa: E741 - matches the width/length naming of the rectangle

    def __post_init__(self) -> None:
        if not (0 < self.w < 1 and 0 < self.l < 1):
            raise ValueError("central area extents must be in (0, 1)")

    @classmethod
    def preset(cls, name: str) -> "CentralArea":
        try:
            w, l = AREA_PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown area preset {name!r}") from None
        return cls(w=w, l=l)


DEFAULT_AREA = CentralArea.preset("medium")


@dataclass(frozen=True)
class ScreenGeometry:
    width_px: int = 1920
    height_px: int = 1080
    px_per_degree: float = 44.0  # at 45 cm
    distance_cm: int = 45

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("screen dimensions must be positive")


def classify_point(h: float, v: float, h_c: float, v_c: float, area: CentralArea) -> Zone:
    dh = h - h_c
    dv = v - v_c
    half_w = area.w / 2.0
    half_l = area.l / 2.0
    if abs(dh) <= half_w and abs(dv) <= half_l:
        return Zone.CENTER
    e_h = (abs(dh) - half_w) / half_w
    e_v = (abs(dv) - half_l) / half_l
    if e_h >= e_v:
        return Zone.LEFT if dh > 0 else Zone.RIGHT
    return Zone.DOWN if dv > 0 else Zone.UP


def classify(sample: GazeSample, profile: CalibrationProfile, area: CentralArea) -> Zone | None:
    """Zone for a valid sample; None (no-zone) on tracking loss."""
    if not sample.valid:
        return None
    return classify_point(sample.h_final, sample.v_final, profile.h_c, profile.v_c, area)


def map_to_screen(
    sample: GazeSample, profile: CalibrationProfile, geom: ScreenGeometry
) -> tuple[int, int]:
    """Debug-overlay pixel position; the profile center lands at screen center."""
    x = geom.width_px * (profile.h_c - sample.h_final + 0.5)
    y = geom.height_px * (sample.v_final - profile.v_c + 0.5)
    xi = min(max(int(round(x)), 0), geom.width_px - 1)
    yi = min(max(int(round(y)), 0), geom.height_px - 1)
    return xi, yi
