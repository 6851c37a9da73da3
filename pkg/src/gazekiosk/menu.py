"""Two-stage hierarchical menu: four direction-keyed clusters of three items.

Confirming a cluster expands it; the item that sat on the right stays right,
the left one stays left, the middle one drops to the bottom, and a back
button appears on top. Ten seconds of inactivity within one stage resets to
the cluster screen (a missed trial in experiment mode).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .zones import Zone

STAGE_TIMEOUT_MS = 10_000

SLOT_NAMES = ("left", "middle", "right")

# Item-stage placement: slot -> direction. The middle item drops to the
# bottom; the top position becomes the back button.
SLOT_TO_DIRECTION = {"left": Zone.LEFT, "middle": Zone.DOWN, "right": Zone.RIGHT}
DIRECTION_TO_SLOT = {zone: slot for slot, zone in SLOT_TO_DIRECTION.items()}
BACK_DIRECTION = Zone.UP


@dataclass(frozen=True)
class Item:
    id: str
    name: str
    icon: str = ""


@dataclass(frozen=True)
class Cluster:
    items: tuple[Item, Item, Item]  # (left, middle, right) slots

    def slot(self, name: str) -> Item:
        return self.items[SLOT_NAMES.index(name)]


@dataclass(frozen=True)
class Catalog:
    clusters: dict[Zone, Cluster]  # keyed UP/DOWN/LEFT/RIGHT

    def __post_init__(self) -> None:
        expected = {Zone.UP, Zone.DOWN, Zone.LEFT, Zone.RIGHT}
        if set(self.clusters) != expected:
            raise ValueError("catalog needs exactly the four direction clusters")
        ids = [item.id for cluster in self.clusters.values() for item in cluster.items]
        if len(set(ids)) != 12:
            raise ValueError("catalog needs 12 distinct item ids")

    def item_ids(self) -> list[str]:
        return [item.id for d in (Zone.UP, Zone.DOWN, Zone.LEFT, Zone.RIGHT) for item in self.clusters[d].items]

    def find(self, item_id: str) -> tuple[Zone, str]:
        """(cluster direction, slot name) for an item id."""
        for direction, cluster in self.clusters.items():
            for slot, item in zip(SLOT_NAMES, cluster.items):
                if item.id == item_id:
                    return direction, slot
        raise KeyError(item_id)

    @classmethod
    def from_dict(cls, data: dict) -> "Catalog":
        clusters = {}
        for key, entries in data.items():
            items = tuple(Item(id=e["id"], name=e.get("name", e["id"]), icon=e.get("icon", "")) for e in entries)
            if len(items) != 3:
                raise ValueError(f"cluster {key!r} needs exactly 3 items")
            clusters[Zone(key)] = Cluster(items=items)
        return cls(clusters=clusters)

    @classmethod
    def from_file(cls, path: str | Path) -> "Catalog":
        return cls.from_dict(json.loads(Path(path).read_text()))

    @classmethod
    def default(cls) -> "Catalog":
        data = resources.files("gazekiosk").joinpath("data/catalog.json").read_text()
        return cls.from_dict(json.loads(data))


@dataclass(frozen=True)
class MenuAction:
    kind: str  # cluster_selected | item_selected | back | timed_out | trial_ended
    t_ms: int
    direction: Optional[Zone] = None
    item_id: Optional[str] = None
    target: Optional[str] = None
    outcome: Optional[str] = None  # correct | false | missed
    completion_ms: Optional[int] = None


@dataclass
class MenuEngine:
    """Single-owner menu state machine; consumes confirmations and clock ticks."""

    catalog: Catalog
    mode: str = "kiosk"  # kiosk | experiment
    targets: tuple[str, ...] = ()

    stage: str = "cluster"  # cluster | item
    selected_cluster: Optional[Zone] = None
    stage_entered_ms: int = 0
    trial_started_ms: int = 0
    _target_idx: int = 0
    started: bool = False

    def start(self, t_ms: int) -> None:
        if self.mode == "experiment" and not self.targets:
            raise ValueError("experiment mode needs a target sequence")
        self.stage = "cluster"
        self.selected_cluster = None
        self.stage_entered_ms = t_ms
        self.trial_started_ms = t_ms
        self._target_idx = 0
        self.started = True

    @property
    def target(self) -> Optional[str]:
        if self.mode != "experiment" or not self.targets:
            return None
        return self.targets[self._target_idx % len(self.targets)]

    def layout(self) -> dict:
        """Direction-keyed payload of the current stage for the UI."""
        if self.stage == "cluster":
            slots = {}
            for direction in (Zone.UP, Zone.DOWN, Zone.LEFT, Zone.RIGHT):
                cluster = self.catalog.clusters[direction]
                slots[direction.value] = {
                    "kind": "cluster",
                    "items": [{"id": i.id, "name": i.name, "icon": i.icon} for i in cluster.items],
                }
            return {"stage": "cluster", "slots": slots}
        cluster = self.catalog.clusters[self.selected_cluster]
        slots = {BACK_DIRECTION.value: {"kind": "back"}}
        for slot_name, direction in SLOT_TO_DIRECTION.items():
            item = cluster.slot(slot_name)
            slots[direction.value] = {
                "kind": "item",
                "item": {"id": item.id, "name": item.name, "icon": item.icon},
            }
        return {"stage": "item", "cluster": self.selected_cluster.value, "slots": slots}

    def advance(self, confirmed: Zone, t_ms: int) -> list[MenuAction]:
        """Apply one dwell confirmation. Every returned action implies the
        stage changed, so the caller must reset the dwell machine."""
        if self.stage == "cluster":
            self.stage = "item"
            self.selected_cluster = confirmed
            self.stage_entered_ms = t_ms
            return [MenuAction(kind="cluster_selected", t_ms=t_ms, direction=confirmed)]
        if confirmed == BACK_DIRECTION:
            self._to_cluster_stage(t_ms)
            return [MenuAction(kind="back", t_ms=t_ms)]
        item = self.catalog.clusters[self.selected_cluster].slot(DIRECTION_TO_SLOT[confirmed])
        actions = [MenuAction(kind="item_selected", t_ms=t_ms, direction=confirmed, item_id=item.id)]
        if self.mode == "experiment":
            outcome = "correct" if item.id == self.target else "false"
            actions.append(self._end_trial(t_ms, outcome, completion_ms=t_ms - self.trial_started_ms))
        self._to_cluster_stage(t_ms)
        return actions

    def tick(self, now_ms: int) -> list[MenuAction]:
        """Stage timeout check; call at every sample."""
        if not self.started or now_ms - self.stage_entered_ms <= STAGE_TIMEOUT_MS:
            return []
        actions = [MenuAction(kind="timed_out", t_ms=now_ms)]
        if self.mode == "experiment":
            actions.append(self._end_trial(now_ms, "missed", completion_ms=None))
        self._to_cluster_stage(now_ms)
        return actions

    def _end_trial(self, t_ms: int, outcome: str, completion_ms: Optional[int]) -> MenuAction:
        action = MenuAction(
            kind="trial_ended",
            t_ms=t_ms,
            target=self.target,
            outcome=outcome,
            completion_ms=completion_ms,
        )
        self._target_idx += 1
        self.trial_started_ms = t_ms
        return action

    def _to_cluster_stage(self, t_ms: int) -> None:
        self.stage = "cluster"
        self.selected_cluster = None
        self.stage_entered_ms = t_ms
