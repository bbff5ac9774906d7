#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
调度策略模块
决定何时激活哪个机器人，以及一个 LCM 周期内各阶段的延迟。
延迟取自有限菜单 k/7 · max_phase_delay（k = 1..7），保证全程精确有理。
"""
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from core.geometry import RPoint, horizontal_symmetry_axis
from core.model import Activity, WorldConfig

DELAY_STEPS = 7


class PolicyError(ValueError):
    """调度策略参数或前置条件不合法。"""


class SchedulerKind(str, Enum):
    FSYNC = "fsync"
    SSYNC = "ssync"
    ASYNC = "async"
    MIRRORED = "mirrored"


@dataclass(frozen=True)
class CycleDelays:
    look: Fraction
    commit: Fraction
    move_start: Fraction
    move: Fraction


@dataclass(frozen=True)
class SchedulerPolicy:
    kind: SchedulerKind
    seed: Optional[int] = None
    max_phase_delay: Fraction = Fraction(1)
    fairness_window: Optional[int] = None

    def __post_init__(self):
        if self.max_phase_delay <= 0:
            raise PolicyError("max_phase_delay 必须为正")
        if self.fairness_window is not None and self.fairness_window < 1:
            raise PolicyError("fairness_window 必须为正整数")
        if self.kind in (SchedulerKind.SSYNC, SchedulerKind.ASYNC) and self.seed is None:
            raise PolicyError(f"{self.kind.value} 调度需要 seed")

    def window(self, n: int) -> int:
        if self.fairness_window is not None:
            return self.fairness_window
        if self.kind in (SchedulerKind.FSYNC, SchedulerKind.MIRRORED):
            return n
        return 16 * n

    def build(self, world: WorldConfig) -> "Scheduler":
        n = len(world.robots)
        if self.kind is SchedulerKind.ASYNC:
            return AsyncScheduler(n, self.max_phase_delay, random.Random(self.seed))
        if self.kind is SchedulerKind.SSYNC:
            return SSyncScheduler(n, self.max_phase_delay, random.Random(self.seed), self.window(n))
        return FSyncScheduler(n, self.max_phase_delay)


class Scheduler:
    """调度器接口：由仿真循环回调。"""

    def initial(self, world: WorldConfig) -> List[Tuple[Fraction, int]]:
        raise NotImplementedError

    def cycle_delays(self, rid: int) -> CycleDelays:
        raise NotImplementedError

    def on_idle(self, rid: int, t: Fraction, world: WorldConfig) -> List[Tuple[Fraction, int]]:
        raise NotImplementedError


class FSyncScheduler(Scheduler):
    """全同步：每轮激活全部机器人，各阶段延迟相同。"""

    def __init__(self, n, delay):
        self.n = n
        self.delay = Fraction(delay)

    def _round_members(self, world):
        return list(range(self.n))

    def initial(self, world):
        return [(self.delay, rid) for rid in self._round_members(world)]

    def cycle_delays(self, rid):
        d = self.delay
        return CycleDelays(d, d, d, d)

    def on_idle(self, rid, t, world):
        if all(r.activity is Activity.IDLE for r in world.robots):
            return [(t + self.delay, i) for i in self._round_members(world)]
        return []


class SSyncScheduler(FSyncScheduler):
    """半同步：每轮随机激活非空子集；连续缺席过久的机器人强制入选。"""

    def __init__(self, n, delay, rng, window):
        super().__init__(n, delay)
        self.rng = rng
        self.max_missed = max(1, window // max(n, 1)) - 1
        self.missed = [0] * n

    def _round_members(self, world):
        members = [i for i in range(self.n) if self.missed[i] >= self.max_missed or self.rng.random() < 0.5]
        if not members:
            members = [self.rng.randrange(self.n)]
        for i in range(self.n):
            self.missed[i] = 0 if i in members else self.missed[i] + 1
        return members


class AsyncScheduler(Scheduler):
    """异步：每个机器人独立地以随机延迟激活、执行各阶段。"""

    def __init__(self, n, delay, rng):
        self.n = n
        self.delay = Fraction(delay)
        self.rng = rng

    def _draw(self) -> Fraction:
        return Fraction(self.rng.randint(1, DELAY_STEPS), DELAY_STEPS) * self.delay

    def initial(self, world):
        return [(self._draw(), rid) for rid in range(self.n)]

    def cycle_delays(self, rid):
        return CycleDelays(self._draw(), self._draw(), self._draw(), self._draw())

    def on_idle(self, rid, t, world):
        return [(t + self._draw(), rid)]


class TraceReplayScheduler(Scheduler):
    """
    按已记录轨迹中的激活时刻和阶段时刻重放，
    用于验证同步调度只是异步机制的一个特例。
    """

    def __init__(self, events, fallback_delay=Fraction(1)):
        self.fallback = Fraction(fallback_delay)
        self.activations: Dict[int, List[Fraction]] = {}
        self.delays: Dict[int, List[CycleDelays]] = {}
        cycles: Dict[int, Dict[str, Fraction]] = {}
        for ev in events:
            if ev.kind == "activate":
                self._close(ev.robot, cycles)
                self.activations.setdefault(ev.robot, []).append(ev.t)
                cycles[ev.robot] = {"activate": ev.t}
            elif ev.robot in cycles:
                cycles[ev.robot][ev.kind] = ev.t
        for rid in list(cycles):
            self._close(rid, cycles)

    def _close(self, rid, cycles):
        c = cycles.pop(rid, None)
        if c is None:
            return
        look = c.get("look", c["activate"] + self.fallback)
        commit = c.get("color_commit", look + self.fallback)
        start = c.get("move_start", commit + self.fallback)
        end = c.get("move_end", start + self.fallback)
        self.delays.setdefault(rid, []).append(
            CycleDelays(look - c["activate"], commit - look, start - commit, end - start))

    def initial(self, world):
        out = []
        for rid, times in self.activations.items():
            if times:
                out.append((times.pop(0), rid))
        return out

    def cycle_delays(self, rid):
        queue = self.delays.get(rid)
        if queue:
            return queue.pop(0)
        d = self.fallback
        return CycleDelays(d, d, d, d)

    def on_idle(self, rid, t, world):
        times = self.activations.get(rid)
        if times:
            return [(times.pop(0), rid)]
        return []


def _mirror_pairs(world: WorldConfig, axis_y: Fraction):
    by_pos = {r.pos: r for r in world.robots}
    return [(r, by_pos[RPoint(r.pos.x, 2 * axis_y - r.pos.y)]) for r in world.robots]


def mirrored_fsync_policy(world: WorldConfig, max_phase_delay=Fraction(1)) -> SchedulerPolicy:
    """
    镜像全同步调度：要求初始配置关于一条不含机器人的水平线对称，
    且镜像伙伴的 Y 轴方向相反、单位相同、灯光相同。
    """
    found = horizontal_symmetry_axis(r.pos for r in world.robots)
    if found is None:
        raise PolicyError("初始配置不关于任何水平线对称")
    axis_y, on_axis = found
    if on_axis:
        raise PolicyError("对称轴上有机器人，无法镜像调度")
    for r, mate in _mirror_pairs(world, axis_y):
        if r.frame.y_sign != -mate.frame.y_sign or r.frame.unit != mate.frame.unit or r.light is not mate.light:
            raise PolicyError(f"机器人 {r.id} 与镜像伙伴 {mate.id} 的局部坐标系或灯光不对称")
    return SchedulerPolicy(SchedulerKind.MIRRORED, max_phase_delay=Fraction(max_phase_delay))
