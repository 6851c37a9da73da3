"""One-point calibration: a short central fixation yields the personal
central ratios (h_c, v_c). Blink-flagged and invalid samples are discarded;
the aggregate is the component-wise median of what remains.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .errors import CalibrationFailedError
from .ratios import GazeSample, RatioBounds
from .vision import EyeLandmarks

DEFAULT_EAR_THRESHOLD = 0.15
DEFAULT_QUORUM = 10


@dataclass(frozen=True)
class CalibrationTargetSpec:
    screen_x: int = 960
    screen_y: int = 540
    duration_ms: int = 2000

    def __post_init__(self) -> None:
        if self.duration_ms <= 0:
            raise ValueError("duration must be positive")


@dataclass(frozen=True)
class CalibrationProfile:
    h_c: float
    v_c: float
    sample_count: int
    created_at_ms: int
    bounds: RatioBounds


def eye_aspect_ratio(eye: EyeLandmarks) -> float:
    """Eyelid gap over corner distance; small values mean the lid is closing."""
    y_upper = (eye.upper[0][1] + eye.upper[1][1]) / 2.0
    y_lower = (eye.lower[0][1] + eye.lower[1][1]) / 2.0
    gap = abs(y_lower - y_upper)
    dx = eye.corner_inner[0] - eye.corner_outer[0]
    dy = eye.corner_inner[1] - eye.corner_outer[1]
    span = (dx * dx + dy * dy) ** 0.5
    if span == 0:
        return 0.0
    return gap / span


def is_blink(eye: EyeLandmarks, ear_threshold: float = DEFAULT_EAR_THRESHOLD) -> bool:
    return eye_aspect_ratio(eye) < ear_threshold


@dataclass
class CalibrationCollector:
    """Accumulates samples over the fixation window and produces the profile.

    feed() returns protocol events as the window starts and ends. The caller
    decides what to do with a CalibrationFailedError (the UI prompts retry).
    """

    spec: CalibrationTargetSpec = field(default_factory=CalibrationTargetSpec)
    bounds: RatioBounds = field(default_factory=RatioBounds)
    quorum: int = DEFAULT_QUORUM

    started_at_ms: int | None = None
    done: bool = False
    _h: list[float] = field(default_factory=list)
    _v: list[float] = field(default_factory=list)
    _profile: CalibrationProfile | None = None

    def feed(self, sample: GazeSample, blink: bool = False) -> list[dict]:
        if self.done:
            return []
        events: list[dict] = []
        if self.started_at_ms is None:
            self.started_at_ms = sample.t_ms
            events.append({"type": "calibration_started", "t_ms": sample.t_ms})
            events.append(self._point_event(sample.t_ms, "red"))
        if sample.t_ms - self.started_at_ms >= self.spec.duration_ms:
            events.extend(self._finish(sample.t_ms))
            return events
        if sample.valid and not blink:
            self._h.append(sample.h_final)
            self._v.append(sample.v_final)
        return events

    def _point_event(self, t_ms: int, state: str) -> dict:
        return {
            "type": "calibration_point",
            "t_ms": t_ms,
            "x": self.spec.screen_x,
            "y": self.spec.screen_y,
            "state": state,
        }

    def _finish(self, t_ms: int) -> list[dict]:
        self.done = True
        events = [self._point_event(t_ms, "green")]
        if len(self._h) < self.quorum:
            events.append({"type": "calibration_failed", "t_ms": t_ms, "reason": "too few usable samples"})
            self._profile = None
            return events
        h_c = float(statistics.median(self._h))
        v_c = float(statistics.median(self._v))
        self._profile = CalibrationProfile(
            h_c=h_c, v_c=v_c, sample_count=len(self._h), created_at_ms=t_ms, bounds=self.bounds
        )
        events.append({"type": "calibration_done", "t_ms": t_ms, "h_c": h_c, "v_c": v_c})
        return events

    @property
    def succeeded(self) -> bool:
        return self.done and self._profile is not None

    def profile(self) -> CalibrationProfile:
        if not self.done:
            raise CalibrationFailedError("calibration window has not finished")
        if self._profile is None:
            raise CalibrationFailedError("too few usable samples")
        return self._profile


def run_calibration(
    samples,
    spec: CalibrationTargetSpec | None = None,
    bounds: RatioBounds | None = None,
    quorum: int = DEFAULT_QUORUM,
) -> tuple[CalibrationProfile, list[dict]]:
    """Run the collector over (sample, blink) pairs or bare samples.

    Raises CalibrationFailedError when fewer than quorum usable samples
    land inside the window.
    """
    collector = CalibrationCollector(
        spec=spec or CalibrationTargetSpec(), bounds=bounds or RatioBounds(), quorum=quorum
    )
    events: list[dict] = []
    last_t = None
    for item in samples:
        sample, blink = item if isinstance(item, tuple) else (item, False)
        events.extend(collector.feed(sample, blink))
        last_t = sample.t_ms
        if collector.done:
            break
    if not collector.done:
        if last_t is None:
            raise CalibrationFailedError("empty sample stream")
        events.extend(collector._finish(last_t))
    profile = collector.profile()
    return profile, events
