#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
轨迹与结果类型，以及从初始世界按事件重放。
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple

from core.geometry import RPoint, format_rational, parse_rational
from core.model import Activity, Light, Motion, WorldConfig, world_digest


class EventKind(str, Enum):
    ACTIVATE = "activate"
    LOOK = "look"
    COLOR_COMMIT = "color_commit"
    MOVE_START = "move_start"
    MOVE_END = "move_end"


class OutcomeStatus(str, Enum):
    FORMED = "formed"
    QUIESCENT_NOT_FORMED = "quiescent_not_formed"
    EVENT_BUDGET_EXHAUSTED = "event_budget_exhausted"
    COLLISION = "collision"


@dataclass(frozen=True)
class TraceEvent:
    t: Fraction
    robot: int
    kind: str
    world_digest: str
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> Dict[str, Any]:
        return {
            "t": format_rational(self.t),
            "robot": self.robot,
            "kind": self.kind,
            "world_digest": self.world_digest,
            "detail": self.detail,
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "TraceEvent":
        return cls(parse_rational(record["t"]), int(record["robot"]), str(record["kind"]),
                   str(record["world_digest"]), dict(record.get("detail") or {}))


@dataclass
class Trace:
    """只追加的事件序列，附带 seed / mode / 图案哈希等元数据。"""
    metadata: Dict[str, Any]
    events: List[TraceEvent] = field(default_factory=list)

    def append(self, event: TraceEvent):
        self.events.append(event)

    def __len__(self):
        return len(self.events)


@dataclass
class Outcome:
    status: OutcomeStatus
    final_world: WorldConfig
    event_count: int
    collision_time: Optional[Fraction] = None
    collision_pair: Optional[Tuple[int, int]] = None

    def to_record(self) -> Dict[str, Any]:
        record = {"kind": "outcome", "status": self.status.value, "event_count": self.event_count,
                  "final_digest": world_digest(self.final_world)}
        if self.status is OutcomeStatus.COLLISION:
            record["time"] = format_rational(self.collision_time)
            record["pair"] = list(self.collision_pair)
        return record


def point_json(p: RPoint):
    return p.to_json()


def point_from_json(data) -> RPoint:
    return RPoint(parse_rational(data[0]), parse_rational(data[1]))


def replay_worlds(initial: WorldConfig, events: List[TraceEvent]) -> Iterator[Tuple[TraceEvent, WorldConfig]]:
    """
    从初始世界逐个应用事件细节，产出 (事件, 事件后的世界)。
    产出的世界对象会被后续事件继续修改，需要保留时自行 copy()。
    """
    world = initial.copy()
    for ev in events:
        robot = world.robots[ev.robot]
        world.time = ev.t
        kind = ev.kind
        detail = ev.detail
        if kind == EventKind.ACTIVATE.value:
            robot.activity = Activity.LOOKING
        elif kind == EventKind.LOOK.value:
            if detail.get("null"):
                robot.activity = Activity.IDLE
            else:
                robot.activity = Activity.SNAPSHOT_TAKEN
                robot.pending_light = Light(detail["light"]) if detail.get("light") else None
                robot.pending_target = point_from_json(detail["target"]) if detail.get("target") else None
        elif kind == EventKind.COLOR_COMMIT.value:
            robot.light = Light(detail["light"])
            robot.pending_light = None
            if robot.pending_target is None:
                robot.activity = Activity.IDLE
        elif kind == EventKind.MOVE_START.value:
            robot.motion = Motion(point_from_json(detail["from"]), point_from_json(detail["to"]),
                                  ev.t, parse_rational(detail["t_end"]))
            robot.activity = Activity.MOVING
        elif kind == EventKind.MOVE_END.value:
            robot.pos = point_from_json(detail["pos"])
            robot.motion = None
            robot.pending_target = None
            robot.activity = Activity.IDLE
        yield ev, world
