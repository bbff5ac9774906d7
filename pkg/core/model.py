#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
机器人模型模块
包含灯光颜色、局部坐标系、机器人状态、世界配置，
以及遮挡可见性计算与 LOOK 快照构造。
算法只能拿到 LocalView，拿不到编号和全局坐标。
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .geometry import RPoint, format_rational


class SimulationFault(RuntimeError):
    """仿真内部不变量被破坏（例如两个机器人重合）。"""


class Light(str, Enum):
    OFF = "off"
    TERMINAL = "terminal"
    CANDIDATE = "candidate"
    SYMMETRY = "symmetry"
    LEADER = "leader"
    DONE = "done"


# 声明顺序，用于输出排序
LIGHT_ORDER = tuple(Light)
TWO_AXIS_LIGHTS = frozenset({Light.OFF, Light.LEADER, Light.DONE})


class Mode(str, Enum):
    ONE_AXIS = "one-axis"
    TWO_AXIS = "two-axis"


class Activity(str, Enum):
    """
    一个 LCM 周期内的阶段：
    idle -> looking（已激活，等待快照）-> snapshot_taken（已决策，颜色/移动待提交）-> moving -> idle
    """
    IDLE = "idle"
    LOOKING = "looking"
    SNAPSHOT_TAKEN = "snapshot_taken"
    MOVING = "moving"


@dataclass(frozen=True)
class LocalFrame:
    y_sign: int
    unit: Fraction

    def __post_init__(self):
        if self.y_sign not in (1, -1):
            raise ValueError(f"y_sign 只能为 +1 或 -1：{self.y_sign}")
        if self.unit <= 0:
            raise ValueError(f"单位长度必须为正：{self.unit}")


def to_local(frame: LocalFrame, origin: RPoint, p: RPoint) -> RPoint:
    return RPoint((p.x - origin.x) / frame.unit, frame.y_sign * (p.y - origin.y) / frame.unit)


def to_global(frame: LocalFrame, origin: RPoint, q: RPoint) -> RPoint:
    return RPoint(origin.x + q.x * frame.unit, origin.y + frame.y_sign * q.y * frame.unit)


@dataclass(frozen=True)
class Motion:
    start: RPoint
    end: RPoint
    t_start: Fraction
    t_end: Fraction

    def position_at(self, t: Fraction) -> RPoint:
        if t <= self.t_start:
            return self.start
        if t >= self.t_end:
            return self.end
        k = (t - self.t_start) / (self.t_end - self.t_start)
        return RPoint(self.start.x + (self.end.x - self.start.x) * k,
                      self.start.y + (self.end.y - self.start.y) * k)


@dataclass
class RobotState:
    """
    单个机器人的仿真状态。id 只在仿真器内部使用。
    pending_light / pending_target 为快照后已决策、尚未提交的颜色与全局目标点。
    """
    id: int
    pos: RPoint
    light: Light
    frame: LocalFrame
    activity: Activity = Activity.IDLE
    view: Optional["LocalView"] = None
    pending_light: Optional[Light] = None
    pending_target: Optional[RPoint] = None
    rule: str = ""
    motion: Optional[Motion] = None

    def position_at(self, t: Fraction) -> RPoint:
        if self.activity is Activity.MOVING and self.motion is not None:
            return self.motion.position_at(t)
        return self.pos

    @property
    def is_stable(self) -> bool:
        """静止且没有待执行的移动或颜色变更。"""
        return self.activity in (Activity.IDLE, Activity.LOOKING)

    def copy(self) -> "RobotState":
        return RobotState(self.id, self.pos, self.light, self.frame, self.activity, self.view,
                          self.pending_light, self.pending_target, self.rule, self.motion)


@dataclass(frozen=True)
class Pattern:
    """目标图案：两两不同、按字典序排列、坐标非负。"""
    points: Tuple[RPoint, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("图案至少包含一个点")
        if len(set(pts)) != len(pts):
            raise ValueError("图案中存在重复点")
        if list(pts) != sorted(pts):
            raise ValueError("图案必须按字典序排列")
        if any(p.x < 0 or p.y < 0 for p in pts):
            raise ValueError("图案坐标必须非负")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> RPoint:
        return self.points[i]

    def digest(self) -> str:
        text = ";".join(f"{format_rational(p.x)},{format_rational(p.y)}" for p in self.points)
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class LocalView:
    """
    LOOK 阶段得到的快照：自身位于原点且不在 visible 中。
    visible 按局部坐标排序，因此与机器人编号无关。
    """
    visible: Tuple[Tuple[RPoint, Light], ...]
    own_color: Light
    n: int
    pattern: Pattern

    def others(self, *lights: Light) -> List[RPoint]:
        return [p for p, c in self.visible if not lights or c in lights]

    def has_light(self, light: Light) -> bool:
        return self.own_color is light or any(c is light for _, c in self.visible)


@dataclass
class WorldConfig:
    robots: List[RobotState]
    mode: Mode
    pattern: Pattern
    time: Fraction = Fraction(0)

    def __post_init__(self):
        if len(self.robots) != len(self.pattern):
            raise ValueError(f"机器人数量 {len(self.robots)} 与图案点数 {len(self.pattern)} 不一致")
        if any(r.id != i for i, r in enumerate(self.robots)):
            raise ValueError("机器人编号必须与其在列表中的下标一致")

    def robot(self, rid: int) -> RobotState:
        return self.robots[rid]

    def positions_at(self, t: Optional[Fraction] = None) -> List[RPoint]:
        t = self.time if t is None else t
        return [r.position_at(t) for r in self.robots]

    @property
    def all_stable(self) -> bool:
        return all(r.is_stable for r in self.robots)

    def copy(self) -> "WorldConfig":
        return WorldConfig([r.copy() for r in self.robots], self.mode, self.pattern, self.time)


def _direction_key(d: RPoint):
    # 同一射线上的点归一化后得到同一个键
    scale = max(abs(d.x), abs(d.y))
    return (d.x / scale, d.y / scale)


def visible_set(world: WorldConfig, observer: int, t: Optional[Fraction] = None) -> List[Tuple[RPoint, Light]]:
    """
    返回 observer 在时刻 t 可见的其他机器人（全局坐标与当前灯光）。
    按方向分组，每条射线上只有最近的一个可见。
    """
    t = world.time if t is None else t
    origin = world.robots[observer].position_at(t)
    nearest = {}
    for robot in world.robots:
        if robot.id == observer:
            continue
        pos = robot.position_at(t)
        d = pos - origin
        if d.x == 0 and d.y == 0:
            raise SimulationFault(f"t={format_rational(t)} 时机器人 {observer} 与 {robot.id} 位置重合")
        key = _direction_key(d)
        dist = max(abs(d.x), abs(d.y))
        best = nearest.get(key)
        if best is None or dist < best[0]:
            nearest[key] = (dist, pos, robot.light)
    return [(pos, light) for _, pos, light in nearest.values()]


def take_snapshot(world: WorldConfig, observer: int, t: Optional[Fraction] = None) -> LocalView:
    robot = world.robots[observer]
    t = world.time if t is None else t
    origin = robot.position_at(t)
    visible = sorted((to_local(robot.frame, origin, p), light) for p, light in visible_set(world, observer, t))
    return LocalView(tuple(visible), robot.light, len(world.pattern), world.pattern)


def world_digest(world: WorldConfig, t: Optional[Fraction] = None) -> str:
    """对排序后的 (位置, 灯光) 对做稳定哈希。"""
    t = world.time if t is None else t
    items = sorted((p, r.light.value) for p, r in zip(world.positions_at(t), world.robots))
    text = ";".join(f"{format_rational(p.x)},{format_rational(p.y)},{light}" for p, light in items)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
