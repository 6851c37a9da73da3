"""Pupil-position ratios: raw per-eye, renormalized, and binocular-averaged.

The horizontal ratio runs 0..1 between the eye-corner x positions; 1 means
the user looks leftmost, 0 rightmost. The vertical ratio runs between the
eyelid midlines; 0 top, 1 bottom. Raw ratios are renormalized against the
range an eye actually covers (pilot bounds) and averaged over both eyes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InvalidLandmarksError
from .vision import EyeLandmarks

# Pilot renormalization bounds: mean extreme ratios observed when looking
# rightmost/leftmost and top/bottom.
PILOT_H_MIN = 0.28
PILOT_H_MAX = 0.87
PILOT_V_MIN = 0.48
PILOT_V_MAX = 0.95


@dataclass(frozen=True)
class RatioBounds:
    h_min: float = PILOT_H_MIN
    h_max: float = PILOT_H_MAX
    v_min: float = PILOT_V_MIN
    v_max: float = PILOT_V_MAX

    def __post_init__(self) -> None:
        if self.h_min >= self.h_max or self.v_min >= self.v_max:
            raise ValueError("bounds must satisfy min < max on both axes")


@dataclass(frozen=True)
class GazeSample:
    t_ms: int
    h_final: Optional[float]
    v_final: Optional[float]
    valid: bool
    h_raw_left: Optional[float] = None
    h_raw_right: Optional[float] = None
    v_raw_left: Optional[float] = None
    v_raw_right: Optional[float] = None


def _clamp01(value: float) -> float:
    return 0.0 if value < 0.0 else 1.0 if value > 1.0 else value


def horizontal_ratio(pupil_x: float, eye: EyeLandmarks) -> float:
    x_min = eye.corner_outer[0]
    x_max = eye.corner_inner[0]
    if x_max == x_min:
        raise InvalidLandmarksError(f"{eye.side} eye corners coincide horizontally")
    return _clamp01((pupil_x - x_min) / (x_max - x_min))


def vertical_ratio(pupil_y: float, eye: EyeLandmarks) -> float:
    y_min = (eye.upper[0][1] + eye.upper[1][1]) / 2.0
    y_max = (eye.lower[0][1] + eye.lower[1][1]) / 2.0
    if y_max == y_min:
        raise InvalidLandmarksError(f"{eye.side} eyelids coincide (blink)")
    return _clamp01((pupil_y - y_min) / (y_max - y_min))


def renormalize(raw: float, axis: str, bounds: RatioBounds) -> float:
    if axis == "horizontal":
        lo, hi = bounds.h_min, bounds.h_max
    elif axis == "vertical":
        lo, hi = bounds.v_min, bounds.v_max
    else:
        raise ValueError(f"unknown axis {axis!r}")
    return _clamp01((raw - lo) / (hi - lo))


def combine_eyes(left: Optional[float], right: Optional[float]) -> Optional[float]:
    """Binocular mean; falls back to the single available eye."""
    if left is None and right is None:
        return None
    if left is None:
        return right
    if right is None:
        return left
    return (left + right) / 2.0


def build_sample(
    t_ms: int,
    left_pupil: Optional[tuple[float, float]],
    right_pupil: Optional[tuple[float, float]],
    left_eye: Optional[EyeLandmarks],
    right_eye: Optional[EyeLandmarks],
    bounds: RatioBounds,
) -> GazeSample:
    """Assemble one GazeSample from frame-space pupil centers and eye landmarks.

    An eye whose landmarks are degenerate or whose pupil is missing simply
    drops out; the sample is invalid only when both eyes drop out.
    """

    def raw_pair(pupil, eye):
        if pupil is None or eye is None:
            return None, None
        try:
            return horizontal_ratio(pupil[0], eye), vertical_ratio(pupil[1], eye)
        except InvalidLandmarksError:
            return None, None

    h_left, v_left = raw_pair(left_pupil, left_eye)
    h_right, v_right = raw_pair(right_pupil, right_eye)

    def renorm(value, axis):
        return None if value is None else renormalize(value, axis, bounds)

    h_final = combine_eyes(renorm(h_left, "horizontal"), renorm(h_right, "horizontal"))
    v_final = combine_eyes(renorm(v_left, "vertical"), renorm(v_right, "vertical"))
    valid = h_final is not None and v_final is not None
    return GazeSample(
        t_ms=t_ms,
        h_final=h_final,
        v_final=v_final,
        valid=valid,
        h_raw_left=h_left,
        h_raw_right=h_right,
        v_raw_left=v_left,
        v_raw_right=v_right,
    )
