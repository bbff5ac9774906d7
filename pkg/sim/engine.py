#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
离散事件仿真循环
单线程、确定性：同一 (场景, 策略, seed) 产出逐字节相同的轨迹。

一个 LCM 周期的事件顺序：
    activate -> look -> color_commit -> move_start -> move_end
空动作在 look 处直接结束周期。每处理一个事件前，
先对上一事件到本事件之间的所有线性运动做精确碰撞检测；
处理后若全部机器人稳定，则探测是否已到达最终配置。
"""
import heapq
import logging
from fractions import Fraction
from typing import Callable, Optional

from apf import decide
from core.geometry import format_rational
from core.model import (
    TWO_AXIS_LIGHTS,
    Activity,
    Light,
    Mode,
    Motion,
    SimulationFault,
    WorldConfig,
    take_snapshot,
    to_global,
    world_digest,
)
from core.scenario import ScenarioError, scenario_to_dict
from verify.classify import pattern_formed

from .collision import collision_check
from .scheduler import AsyncScheduler, Scheduler, SchedulerPolicy
from .trace import EventKind, Outcome, OutcomeStatus, Trace, TraceEvent, point_json

logger = logging.getLogger(__name__)

DEFAULT_MAX_EVENTS = 100_000

_NORMAL = 1
_FORCED = 0


def _resolve_action(world: WorldConfig, rid: int, view=None):
    """把算法输出换算成 (新灯光, 全局目标点, 规则)，无变化的部分记为 None。"""
    robot = world.robots[rid]
    view = view or take_snapshot(world, rid)
    action = decide(view, world.mode)
    light = action.new_color if action.new_color is not None and action.new_color is not robot.light else None
    target = None
    if action.destination is not None:
        target = to_global(robot.frame, robot.pos, action.destination)
        if target == robot.pos:
            target = None
    return light, target, action.rule


def quiescent_final(world: WorldConfig) -> bool:
    """假想每个机器人此刻拍快照，全部得到空动作时返回 True。"""
    if not world.all_stable:
        raise SimulationFault("quiescent_final 只能在全部机器人稳定时调用")
    for rid in range(len(world.robots)):
        light, target, _ = _resolve_action(world, rid)
        if light is not None or target is not None:
            return False
    return True


def validate_world(world: WorldConfig):
    positions = [r.pos for r in world.robots]
    if len(set(positions)) != len(positions):
        raise ScenarioError("初始配置中存在重合的机器人")
    for r in world.robots:
        if r.activity is not Activity.IDLE:
            raise ScenarioError(f"机器人 {r.id} 初始必须处于 idle", field=f"robots[{r.id}]")
        if world.mode is Mode.TWO_AXIS and (r.frame.y_sign != 1 or r.light not in TWO_AXIS_LIGHTS):
            raise ScenarioError("two-axis 模式要求 y_sign = +1 且只用三种颜色", field=f"robots[{r.id}]")


class Simulator:
    """
    事件驱动仿真器。

    Args:
        world: 初始世界（不会被修改）
        policy: 调度策略
        max_events: 事件预算
        scheduler: 可选，直接给定调度器实例（例如轨迹重放）
        on_event: 可选回调 (事件, 事件后的世界)
    """

    def __init__(self, world: WorldConfig, policy: SchedulerPolicy, max_events: int = DEFAULT_MAX_EVENTS,
                 scheduler: Optional[Scheduler] = None,
                 on_event: Optional[Callable[[TraceEvent, WorldConfig], None]] = None):
        if max_events < 1:
            raise ValueError("max_events 必须 >= 1")
        validate_world(world)
        self.initial = world.copy()
        self.world = world.copy()
        self.policy = policy
        self.max_events = max_events
        self.on_event = on_event
        n = len(world.robots)
        self.scheduler = scheduler or policy.build(world)
        self.window = policy.window(n)
        self._enforce_fairness = isinstance(self.scheduler, AsyncScheduler)
        self.trace = Trace(metadata={
            "seed": policy.seed,
            "mode": world.mode.value,
            "scheduler": policy.kind.value,
            "pattern_hash": world.pattern.digest(),
            "max_phase_delay": format_rational(policy.max_phase_delay),
            "fairness_window": self.window,
            "scenario": scenario_to_dict(world),
        })
        self.outcome: Optional[Outcome] = None
        self._queue = []
        self._seq = 0
        self._tokens = [0] * n
        self._delays = {}
        self._since = [0] * n
        self._prev_time = Fraction(0)
        self._last_probe = None
        for t, rid in self.scheduler.initial(self.world):
            self._schedule_activation(t, rid)
        self._check_quiescence()

    # ---- 调度 ----

    def _push(self, t, rid, kind, prio=_NORMAL, token=0):
        self._seq += 1
        heapq.heappush(self._queue, (t, prio, self._seq, rid, kind, token))

    def _schedule_activation(self, t, rid, prio=_NORMAL):
        self._tokens[rid] += 1
        self._push(t, rid, EventKind.ACTIVATE, prio, self._tokens[rid])

    def _starving(self, rid):
        if not self._enforce_fairness:
            return None
        for r in self.world.robots:
            if r.id != rid and r.activity is Activity.IDLE and self._since[r.id] >= self.window - 1:
                return r.id
        return None

    def _became_idle(self, rid, t):
        for ta, r in self.scheduler.on_idle(rid, t, self.world):
            self._schedule_activation(ta, r)

    # ---- 碰撞 ----

    def _check_collisions(self, t0, t1):
        if t1 == t0:
            return None
        robots = self.world.robots
        moving = [r.id for r in robots if r.activity is Activity.MOVING]
        if not moving:
            return None
        motions = [(r.position_at(t0), r.position_at(t1), t0, t1) for r in robots]
        best = None
        for i in moving:
            for j in range(len(robots)):
                if j == i or (j in moving and j < i):
                    continue
                hit = collision_check([motions[i], motions[j]])
                if hit is not None and (best is None or hit[0] < best[0]):
                    best = (hit[0], tuple(sorted((i, j))))
        return best

    # ---- 事件处理 ----

    def _apply(self, t, rid, kind) -> dict:
        robot = self.world.robots[rid]
        if kind is EventKind.ACTIVATE:
            robot.activity = Activity.LOOKING
            delays = self.scheduler.cycle_delays(rid)
            self._delays[rid] = delays
            for i in range(len(self._since)):
                self._since[i] += 1
            self._since[rid] = 0
            self._push(t + delays.look, rid, EventKind.LOOK)
            return {}

        delays = self._delays[rid]
        if kind is EventKind.LOOK:
            view = take_snapshot(self.world, rid, t)
            light, target, rule = _resolve_action(self.world, rid, view)
            if light is None and target is None:
                robot.activity = Activity.IDLE
                self._became_idle(rid, t)
                return {"null": True, "rule": rule}
            robot.activity = Activity.SNAPSHOT_TAKEN
            robot.view = view
            robot.rule = rule
            robot.pending_light = light
            robot.pending_target = target
            self._push(t + delays.commit, rid, EventKind.COLOR_COMMIT)
            return {"rule": rule,
                    "light": light.value if light else None,
                    "target": point_json(target) if target else None}

        if kind is EventKind.COLOR_COMMIT:
            if robot.pending_light is not None:
                robot.light = robot.pending_light
            robot.pending_light = None
            if robot.pending_target is not None:
                self._push(t + delays.move_start, rid, EventKind.MOVE_START)
            else:
                robot.activity = Activity.IDLE
                robot.view = None
                self._became_idle(rid, t)
            return {"light": robot.light.value}

        if kind is EventKind.MOVE_START:
            t_end = t + delays.move
            robot.motion = Motion(robot.pos, robot.pending_target, t, t_end)
            robot.activity = Activity.MOVING
            self._push(t_end, rid, EventKind.MOVE_END)
            return {"from": point_json(robot.pos), "to": point_json(robot.pending_target),
                    "t_end": format_rational(t_end)}

        # MOVE_END：刚性移动，精确落在目标点
        robot.pos = robot.pending_target
        robot.pending_target = None
        robot.motion = None
        robot.view = None
        robot.activity = Activity.IDLE
        self._became_idle(rid, t)
        return {"pos": point_json(robot.pos)}

    def _finish(self, status, collision=None):
        self.outcome = Outcome(status, self.world.copy(), len(self.trace.events),
                               collision[0] if collision else None,
                               collision[1] if collision else None)
        logger.info("仿真结束：%s，事件数 %d", status.value, len(self.trace.events))

    def _check_quiescence(self):
        if not self.world.all_stable:
            return
        digest = world_digest(self.world)
        if digest == self._last_probe:
            return
        self._last_probe = digest
        if quiescent_final(self.world):
            formed = pattern_formed(self.world, self.world.pattern)
            self._finish(OutcomeStatus.FORMED if formed else OutcomeStatus.QUIESCENT_NOT_FORMED)

    def step(self) -> Optional[TraceEvent]:
        """处理下一个事件并返回它；仿真已结束时返回 None。"""
        while self.outcome is None:
            if not self._queue:
                self._finish(OutcomeStatus.QUIESCENT_NOT_FORMED)
                return None
            t, prio, seq, rid, kind, token = heapq.heappop(self._queue)
            if kind is EventKind.ACTIVATE:
                if token != self._tokens[rid]:
                    continue
                starving = self._starving(rid)
                if starving is not None:
                    heapq.heappush(self._queue, (t, prio, seq, rid, kind, token))
                    self._schedule_activation(t, starving, _FORCED)
                    continue
            hit = self._check_collisions(self._prev_time, t)
            if hit is not None:
                self.world.time = hit[0]
                self._finish(OutcomeStatus.COLLISION, hit)
                return None
            self.world.time = t
            self._prev_time = t
            detail = self._apply(t, rid, kind)
            event = TraceEvent(t, rid, kind.value, world_digest(self.world, t), detail)
            self.trace.append(event)
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug("t=%s robot=%d %s %s", format_rational(t), rid, kind.value, detail)
            if self.on_event is not None:
                self.on_event(event, self.world)
            self._check_quiescence()
            if self.outcome is None and len(self.trace.events) >= self.max_events:
                self._finish(OutcomeStatus.EVENT_BUDGET_EXHAUSTED)
            return event
        return None

    def run(self):
        while self.outcome is None:
            self.step()
        return self.trace, self.outcome


def run(world: WorldConfig, policy: SchedulerPolicy, max_events: int = DEFAULT_MAX_EVENTS, on_event=None):
    """运行到结束，返回 (Trace, Outcome)。"""
    return Simulator(world, policy, max_events=max_events, on_event=on_event).run()


def colors_used(world: WorldConfig, trace: Trace):
    """轨迹中出现过的全部灯光（含初始灯光），按声明顺序。"""
    seen = {r.light for r in world.robots}
    for ev in trace.events:
        if ev.kind == EventKind.COLOR_COMMIT.value:
            seen.add(Light(ev.detail["light"]))
    return [light for light in Light if light in seen]
