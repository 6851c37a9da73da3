"""Simulation lab: deterministic replay, a synthetic gaze-behavior model,
the condition grid runner, and trial metrics.

The synthetic user runs closed-loop against the real pipeline: it waits a
reaction time after every stage change, optionally glances at a wrong
direction first, then fixates the direction leading to the target with
Gaussian ratio noise and scheduled blinks, until the dwell machine confirms.
Everything is a pure function of the seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .calibration import CalibrationProfile
from .dwell import DwellConfig
from .menu import BACK_DIRECTION, SLOT_TO_DIRECTION, Catalog
from .pipeline import Pipeline, PipelineConfig, run_trace
from .ratios import GazeSample
from .traces import read_ratio_trace
from .zones import CentralArea, Zone

# Viewing distance degrades webcam ratio estimation; modelled as noise presets.
DISTANCE_NOISE = {45: 0.05, 55: 0.08, 65: 0.12}

OVERSHOOT_GLANCE_MS = (300, 900)

USER_CENTER = (0.5, 0.5)


@dataclass(frozen=True)
class SyntheticUserModel:
    reaction_ms: int = 500
    noise_sigma: float = 0.0
    blink_rate_hz: float = 17.0 / 60.0
    blink_duration_ms: int = 150
    sample_rate_hz: int = 30
    overshoot_prob: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.reaction_ms, self.noise_sigma, self.blink_rate_hz, self.blink_duration_ms,
               self.sample_rate_hz, self.overshoot_prob) < 0:
            raise ValueError("model parameters must be nonnegative")


@dataclass(frozen=True)
class Condition:
    area_preset: str
    dwell_ms: int
    distance_cm: int

    @property
    def noise_sigma(self) -> float:
        return DISTANCE_NOISE[self.distance_cm]


@dataclass(frozen=True)
class TrialRecord:
    target: str
    outcome: str  # correct | false | missed
    completion_ms: Optional[int]
    condition: Optional[Condition] = None

    def __post_init__(self) -> None:
        if (self.completion_ms is None) != (self.outcome == "missed"):
            raise ValueError("completion time present iff the trial was not missed")


@dataclass(frozen=True)
class Metrics:
    n_trials: int
    error_rate: float
    false_rate: float
    missed_rate: float
    mean_time_ms: Optional[float]
    sd_time_ms: Optional[float]


def full_grid() -> list[Condition]:
    """All 36 distance x dwell x area combinations."""
    return [
        Condition(area_preset=area, dwell_ms=dwell, distance_cm=dist)
        for dist in (45, 55, 65)
        for dwell in (500, 800, 1000, 1200)
        for area in ("small", "medium", "large")
    ]


def zone_anchor(direction: Zone, profile: CalibrationProfile, area: CentralArea) -> tuple[float, float]:
    """Center of the directional region between the rectangle edge and the
    ratio-space boundary; where the synthetic user aims."""
    h_c, v_c = profile.h_c, profile.v_c
    if direction == Zone.LEFT:
        return ((h_c + area.w / 2 + 1.0) / 2.0, v_c)
    if direction == Zone.RIGHT:
        return ((h_c - area.w / 2) / 2.0, v_c)
    if direction == Zone.DOWN:
        return (h_c, (v_c + area.l / 2 + 1.0) / 2.0)
    if direction == Zone.UP:
        return (h_c, (v_c - area.l / 2) / 2.0)
    raise ValueError(f"no anchor for {direction}")


class _UserBehavior:
    """Gaze intent of the synthetic user, re-planned on every stage event."""

    def __init__(self, model: SyntheticUserModel, catalog: Catalog, rng: np.random.Generator):
        self.model = model
        self.catalog = catalog
        self.rng = rng
        self.profile: Optional[CalibrationProfile] = None
        self.area: Optional[CentralArea] = None
        self.react_until = 0
        self.glance_until = 0
        self.glance_dir: Optional[Zone] = None
        self.intent: Optional[Zone] = None

    def on_stage(self, event: dict, t_ms: int) -> None:
        target = event.get("target")
        if event["stage"] == "cluster":
            self.intent = self.catalog.find(target)[0] if target else None
        else:
            cluster = Zone(event["cluster"])
            if target:
                direction, slot = self.catalog.find(target)
                self.intent = SLOT_TO_DIRECTION[slot] if direction == cluster else BACK_DIRECTION
            else:
                self.intent = None
        self.react_until = t_ms + self.model.reaction_ms
        self.glance_until = 0
        self.glance_dir = None
        if self.intent is not None and self.rng.random() < self.model.overshoot_prob:
            others = [d for d in (Zone.LEFT, Zone.RIGHT, Zone.UP, Zone.DOWN) if d != self.intent]
            self.glance_dir = others[int(self.rng.integers(len(others)))]
            lo, hi = OVERSHOOT_GLANCE_MS
            self.glance_until = self.react_until + int(self.rng.uniform(lo, hi))

    def gaze_point(self, t_ms: int) -> tuple[float, float]:
        if self.profile is None or self.intent is None or t_ms < self.react_until:
            return USER_CENTER
        if self.glance_dir is not None and t_ms < self.glance_until:
            return zone_anchor(self.glance_dir, self.profile, self.area)
        return zone_anchor(self.intent, self.profile, self.area)


def simulate_trials(
    model: SyntheticUserModel,
    plan: Sequence[str],
    catalog: Catalog,
    area: CentralArea,
    dwell_ms: int,
    rng: Optional[np.random.Generator] = None,
) -> tuple[list[GazeSample], list[dict]]:
    """Closed-loop run of the synthetic user; returns (trace samples, event log)."""
    if not plan:
        raise ValueError("empty target plan")
    rng = rng if rng is not None else np.random.default_rng(model.seed)
    config = PipelineConfig(
        area=area,
        dwell=DwellConfig(threshold_ms=dwell_ms),
        mode="experiment",
        targets=tuple(plan),
        catalog=catalog,
    )
    pipe = Pipeline(config)
    user = _UserBehavior(model, catalog, rng)
    user.area = area

    rate = model.sample_rate_hz
    blink_p = model.blink_rate_hz / rate if rate > 0 else 0.0
    blink_until = -1
    samples: list[GazeSample] = []
    events: list[dict] = []
    trials_done = 0
    # worst case per trial: two 10 s stage windows plus slack
    max_samples = int((len(plan) * 25_000 + 5_000) * rate / 1000) * 2

    for k in range(max_samples):
        t = (k * 1000) // rate
        blink = False
        if t < blink_until:
            blink = True
        elif blink_p > 0 and rng.random() < blink_p:
            blink = True
            blink_until = t + model.blink_duration_ms
        if blink:
            sample = GazeSample(t_ms=t, h_final=None, v_final=None, valid=False)
        else:
            point = user.gaze_point(t)
            noisy = rng.normal(point, model.noise_sigma) if model.noise_sigma > 0 else np.asarray(point)
            h = round(float(min(max(noisy[0], 0.0), 1.0)), 6)
            v = round(float(min(max(noisy[1], 0.0), 1.0)), 6)
            sample = GazeSample(t_ms=t, h_final=h, v_final=v, valid=True)
        samples.append(sample)
        for event in pipe.feed(sample):
            events.append(event)
            if event["type"] == "calibration_done":
                user.profile = pipe.profile
            elif event["type"] == "stage":
                user.on_stage(event, t)
            elif event["type"] == "trial":
                trials_done += 1
        if trials_done >= len(plan):
            break
    return samples, events


def synth_trace(
    model: SyntheticUserModel, plan: Sequence[str], catalog: Catalog, condition: Condition
) -> list[GazeSample]:
    """Trace of a synthetic user under one condition. Noise comes from the
    model; the grid runner derives it from viewing distance before calling."""
    samples, _ = simulate_trials(
        model, plan, catalog, CentralArea.preset(condition.area_preset), condition.dwell_ms
    )
    return samples


def replay(trace: str | Path | Sequence[GazeSample], config: PipelineConfig) -> list[dict]:
    """Deterministic re-run of a ratio trace through the full pipeline."""
    samples = read_ratio_trace(trace) if isinstance(trace, (str, Path)) else trace
    return run_trace(samples, config)


def trial_records(events: list[dict], condition: Optional[Condition] = None) -> list[TrialRecord]:
    return [
        TrialRecord(
            target=e["target"], outcome=e["outcome"], completion_ms=e["completion_ms"], condition=condition
        )
        for e in events
        if e["type"] == "trial"
    ]


def compute_metrics(records: Sequence[TrialRecord]) -> Metrics:
    if not records:
        raise ValueError("no trial records")
    n = len(records)
    false_count = sum(1 for r in records if r.outcome == "false")
    missed_count = sum(1 for r in records if r.outcome == "missed")
    completions = [float(r.completion_ms) for r in records if r.outcome != "missed"]
    if completions:
        mean = float(np.mean(completions))
        sd = float(np.std(completions))
    else:
        mean = sd = None
    return Metrics(
        n_trials=n,
        error_rate=(false_count + missed_count) / n,
        false_rate=false_count / n,
        missed_rate=missed_count / n,
        mean_time_ms=mean,
        sd_time_ms=sd,
    )


def run_grid(
    conditions: Sequence[Condition],
    reps_per_condition: int,
    model: SyntheticUserModel,
    catalog: Catalog,
    seed: int,
) -> list[tuple[Condition, Metrics]]:
    """One Metrics row per condition over a rotating 12-item target plan.

    Each condition gets an RNG stream spawned from the master seed, so
    results do not depend on execution order.
    """
    items = catalog.item_ids()
    area_index = {"small": 0, "medium": 1, "large": 2, "pilot": 3}
    rows: list[tuple[Condition, Metrics]] = []
    for condition in conditions:
        # seed derived from the condition identity, not its list position
        key = (condition.distance_cm, condition.dwell_ms, area_index[condition.area_preset])
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))
        cond_model = replace(model, noise_sigma=condition.noise_sigma)
        plan = [items[j % len(items)] for j in range(reps_per_condition)]
        _, events = simulate_trials(
            cond_model, plan, catalog, CentralArea.preset(condition.area_preset), condition.dwell_ms, rng=rng
        )
        rows.append((condition, compute_metrics(trial_records(events, condition))))
    return rows


def write_grid_csv(rows: Sequence[tuple[Condition, Metrics]], path: str | Path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["distance_cm", "dwell_ms", "area", "mean_time_ms", "sd_time_ms",
             "error_rate", "false_rate", "missed_rate", "n"]
        )
        for condition, m in rows:
            writer.writerow(
                [
                    condition.distance_cm,
                    condition.dwell_ms,
                    condition.area_preset,
                    f"{m.mean_time_ms:.1f}" if m.mean_time_ms is not None else "",
                    f"{m.sd_time_ms:.1f}" if m.sd_time_ms is not None else "",
                    f"{m.error_rate:.4f}",
                    f"{m.false_rate:.4f}",
                    f"{m.missed_rate:.4f}",
                    m.n_trials,
                ]
            )
