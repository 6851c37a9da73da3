"""Dwell selection state machine.

Holding gaze on one directional zone accumulates dwell time; crossing the
threshold confirms the selection. Leaving the zone (beyond the configured
grace) resets progress. After a confirmation the machine stays quiet until
the gaze leaves that direction or the menu explicitly resets it, so a
selection cannot double-fire while the user's eyes rest on the arrow.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import NonMonotonicTimestampError
from .zones import DIRECTIONS, Zone

DWELL_THRESHOLDS_MS = (500, 800, 1000, 1200)


@dataclass(frozen=True)
class DwellConfig:
    threshold_ms: int = 1000
    grace_ms: int = 0
    feedback_period_ms: int = 100

    def __post_init__(self) -> None:
        if self.threshold_ms <= 0:
            raise ValueError("threshold must be positive")
        if self.grace_ms < 0 or self.feedback_period_ms <= 0:
            raise ValueError("grace must be >= 0 and feedback period positive")


@dataclass(frozen=True)
class DwellEvent:
    kind: str  # started | progress | confirmed | lost
    direction: Zone
    t_ms: int
    elapsed_ms: int = 0


@dataclass(frozen=True)
class DwellState:
    direction: Optional[Zone] = None  # None = idle
    since_ms: int = 0
    last_seen_ms: int = 0
    suppress: Optional[Zone] = None  # direction blocked after a confirmation
    last_t_ms: Optional[int] = None

    @property
    def focusing(self) -> bool:
        return self.direction is not None


def _start(state: DwellState, zone: Zone, t_ms: int) -> tuple[DwellState, DwellEvent]:
    new = DwellState(direction=zone, since_ms=t_ms, last_seen_ms=t_ms, suppress=None, last_t_ms=t_ms)
    return new, DwellEvent(kind="started", direction=zone, t_ms=t_ms)


def step(
    state: DwellState, zone: Optional[Zone], t_ms: int, cfg: DwellConfig
) -> tuple[DwellState, list[DwellEvent]]:
    """Advance the machine by one zone sample; no-zone means tracking loss."""
    if state.last_t_ms is not None and t_ms < state.last_t_ms:
        raise NonMonotonicTimestampError(f"t={t_ms} after t={state.last_t_ms}")
    directional = zone in DIRECTIONS
    events: list[DwellEvent] = []

    if state.direction is None:
        if state.suppress is not None:
            if zone == state.suppress:
                return replace(state, last_t_ms=t_ms), events
            state = replace(state, suppress=None)
        if directional:
            new, started = _start(state, zone, t_ms)
            return new, [started]
        return replace(state, last_t_ms=t_ms), events

    d = state.direction
    if zone == d:
        elapsed = t_ms - state.since_ms
        if elapsed >= cfg.threshold_ms:
            events.append(DwellEvent(kind="confirmed", direction=d, t_ms=t_ms, elapsed_ms=elapsed))
            return DwellState(suppress=d, last_t_ms=t_ms), events
        period = cfg.feedback_period_ms
        if (t_ms - state.since_ms) // period > (state.last_seen_ms - state.since_ms) // period:
            events.append(DwellEvent(kind="progress", direction=d, t_ms=t_ms, elapsed_ms=elapsed))
        return replace(state, last_seen_ms=t_ms, last_t_ms=t_ms), events

    # Interruption: tolerated while the dropout stays within grace.
    if t_ms - state.last_seen_ms <= cfg.grace_ms:
        return replace(state, last_t_ms=t_ms), events
    events.append(DwellEvent(kind="lost", direction=d, t_ms=t_ms))
    if directional:
        new, started = _start(state, zone, t_ms)
        events.append(started)
        return new, events
    return DwellState(last_t_ms=t_ms), events


def reset(state: DwellState) -> tuple[DwellState, list[DwellEvent]]:
    """Clear all progress and any post-confirmation block (menu stage change)."""
    events: list[DwellEvent] = []
    if state.direction is not None:
        events.append(DwellEvent(kind="lost", direction=state.direction, t_ms=state.last_t_ms or state.last_seen_ms))
    return DwellState(last_t_ms=state.last_t_ms), events


@dataclass
class DwellSelector:
    """Mutable wrapper holding one session's dwell state."""

    cfg: DwellConfig = field(default_factory=DwellConfig)
    state: DwellState = field(default_factory=DwellState)

    def step(self, zone: Optional[Zone], t_ms: int) -> list[DwellEvent]:
        self.state, events = step(self.state, zone, t_ms, self.cfg)
        return events

    def reset(self) -> list[DwellEvent]:
        self.state, events = reset(self.state)
        return events
