"""Sample-to-event pipeline: calibration, zone classification, dwell
selection, and menu logic composed behind one feed() call.

Both the replay harness and the live service drive this class, which is what
makes their event streams comparable byte for byte. Timestamps originate at
the sample source and are never re-stamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .calibration import CalibrationCollector, CalibrationProfile, CalibrationTargetSpec
from .dwell import DwellConfig, DwellSelector
from .errors import NonMonotonicTimestampError
from .menu import Catalog, MenuAction, MenuEngine
from .ratios import GazeSample, RatioBounds
from .zones import CentralArea, ScreenGeometry, classify, map_to_screen

MIN_SAMPLE_RATE_HZ = 15.0


@dataclass
class PipelineConfig:
    bounds: RatioBounds = field(default_factory=RatioBounds)
    area: CentralArea = field(default_factory=lambda: CentralArea.preset("medium"))
    dwell: DwellConfig = field(default_factory=DwellConfig)
    screen: ScreenGeometry = field(default_factory=ScreenGeometry)
    calibration: CalibrationTargetSpec = field(default_factory=CalibrationTargetSpec)
    calibration_quorum: int = 10
    profile: Optional[tuple[float, float]] = None  # (h_c, v_c) skips calibration
    mode: str = "kiosk"
    targets: tuple[str, ...] = ()
    catalog: Catalog = field(default_factory=Catalog.default)
    emit_gaze: bool = False


class Pipeline:
    """Feed GazeSamples in timestamp order; collect protocol event dicts."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.profile: Optional[CalibrationProfile] = None
        self._collector: Optional[CalibrationCollector] = None
        self._dwell = DwellSelector(cfg=config.dwell)
        self._menu = MenuEngine(catalog=config.catalog, mode=config.mode, targets=tuple(config.targets))
        self._last_t: Optional[int] = None
        self._was_valid = True
        self._degraded = False
        if config.profile is not None:
            h_c, v_c = config.profile
            self.profile = CalibrationProfile(
                h_c=h_c, v_c=v_c, sample_count=0, created_at_ms=0, bounds=config.bounds
            )

    def begin_calibration(self) -> None:
        """Arm (or re-arm) the calibration window; the next samples feed it."""
        self._collector = CalibrationCollector(
            spec=self.config.calibration, bounds=self.config.bounds, quorum=self.config.calibration_quorum
        )
        self.profile = None
        self._menu.started = False
        self._dwell.reset()

    def set_condition(self, dwell_ms: Optional[int] = None, area: Optional[CentralArea] = None) -> None:
        if dwell_ms is not None:
            self._dwell.cfg = replace(self._dwell.cfg, threshold_ms=int(dwell_ms))
            self.config.dwell = self._dwell.cfg
        if area is not None:
            self.config.area = area

    def start_experiment(self, targets: tuple[str, ...]) -> list[dict]:
        """Switch to experiment mode with a target sequence; returns the
        stage event announcing the first target when a profile exists."""
        if not targets:
            raise ValueError("experiment needs at least one target")
        known = set(self.config.catalog.item_ids())
        unknown = [t for t in targets if t not in known]
        if unknown:
            raise ValueError(f"unknown targets: {unknown}")
        self.config.mode = "experiment"
        self.config.targets = tuple(targets)
        self._menu = MenuEngine(catalog=self.config.catalog, mode="experiment", targets=tuple(targets))
        events = [self._dwell_event(dev) for dev in self._dwell.reset()]
        if self.profile is not None and self._last_t is not None:
            self._menu.start(self._last_t)
            events.append(self._stage_event(self._last_t))
        return events

    def feed(self, sample: GazeSample, blink: bool = False) -> list[dict]:
        if self._last_t is not None and sample.t_ms < self._last_t:
            raise NonMonotonicTimestampError(f"sample t={sample.t_ms} after t={self._last_t}")
        events: list[dict] = []
        self._check_rate(sample.t_ms, events)
        self._last_t = sample.t_ms

        if sample.valid != self._was_valid:
            if not sample.valid:
                events.append({"type": "tracking_lost", "t_ms": sample.t_ms})
            self._was_valid = sample.valid

        if self.profile is None and self._collector is None:
            self.begin_calibration()
        if self._collector is not None:
            events.extend(self._feed_calibration(sample, blink))
            return events

        if not self._menu.started:
            self._menu.start(sample.t_ms)
            events.append(self._stage_event(sample.t_ms))
        events.extend(self._run_sample(sample))
        return events

    def _check_rate(self, t_ms: int, events: list[dict]) -> None:
        if self._last_t is None:
            return
        gap = t_ms - self._last_t
        slow = gap > 1000.0 / MIN_SAMPLE_RATE_HZ
        if slow and not self._degraded:
            events.append({"type": "degraded", "t_ms": t_ms, "gap_ms": gap})
        self._degraded = slow

    def _feed_calibration(self, sample: GazeSample, blink: bool) -> list[dict]:
        events = self._collector.feed(sample, blink)
        if self._collector.done:
            if self._collector.succeeded:
                self.profile = self._collector.profile()
                self._menu.start(sample.t_ms)
                events.append(self._stage_event(sample.t_ms))
            self._collector = None
        return events

    def _stage_event(self, t_ms: int) -> dict:
        layout = self._menu.layout()
        return {"type": "stage", "t_ms": t_ms, "target": self._menu.target, **layout}

    def _run_sample(self, sample: GazeSample) -> list[dict]:
        events: list[dict] = []
        t = sample.t_ms

        tick_actions = self._menu.tick(t)
        if tick_actions:
            for dev in self._dwell.reset():
                events.append(self._dwell_event(dev))
            for action in tick_actions:
                events.extend(self._action_events(action))
            events.append(self._stage_event(t))

        zone = classify(sample, self.profile, self.config.area)
        for dev in self._dwell.step(zone, t):
            events.append(self._dwell_event(dev))
            if dev.kind == "confirmed":
                actions = self._menu.advance(dev.direction, t)
                for action in actions:
                    events.extend(self._action_events(action))
                if actions:  # every menu action implies a stage change
                    for lost in self._dwell.reset():
                        events.append(self._dwell_event(lost))
                    events.append(self._stage_event(t))

        if self.config.emit_gaze and sample.valid:
            x, y = map_to_screen(sample, self.profile, self.config.screen)
            events.append({"type": "gaze", "t_ms": t, "x_px": x, "y_px": y})
        return events

    def _dwell_event(self, dev) -> dict:
        if dev.kind in ("started", "progress"):
            return {
                "type": "focus",
                "t_ms": dev.t_ms,
                "direction": dev.direction.value,
                "elapsed_ms": dev.elapsed_ms,
                "threshold_ms": self._dwell.cfg.threshold_ms,
            }
        if dev.kind == "confirmed":
            return {"type": "confirmed", "t_ms": dev.t_ms, "direction": dev.direction.value}
        return {"type": "focus_lost", "t_ms": dev.t_ms, "direction": dev.direction.value}

    def _action_events(self, action: MenuAction) -> list[dict]:
        if action.kind in ("cluster_selected", "back"):
            return []  # the following stage event carries the new layout
        if action.kind == "item_selected":
            return [{"type": "selected", "t_ms": action.t_ms, "item_id": action.item_id}]
        if action.kind == "timed_out":
            return [{"type": "timeout", "t_ms": action.t_ms}]
        if action.kind == "trial_ended":
            return [
                {
                    "type": "trial",
                    "t_ms": action.t_ms,
                    "target": action.target,
                    "outcome": action.outcome,
                    "completion_ms": action.completion_ms,
                }
            ]
        raise AssertionError(f"unknown action {action.kind}")


def run_trace(samples, config: PipelineConfig) -> list[dict]:
    """Feed a whole sample sequence; returns the ordered event log."""
    pipe = Pipeline(config)
    events: list[dict] = []
    for sample in samples:
        events.extend(pipe.feed(sample))
    return events
