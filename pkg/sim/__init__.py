"""
仿真模块
包含调度策略、碰撞检测、轨迹类型与事件循环
"""
from .collision import collision_check
from .engine import DEFAULT_MAX_EVENTS, Simulator, colors_used, quiescent_final, run
from .scheduler import (
    CycleDelays,
    PolicyError,
    SchedulerKind,
    SchedulerPolicy,
    TraceReplayScheduler,
    mirrored_fsync_policy,
)
from .trace import EventKind, Outcome, OutcomeStatus, Trace, TraceEvent, replay_worlds

__all__ = [
    "collision_check",
    "DEFAULT_MAX_EVENTS",
    "Simulator",
    "colors_used",
    "quiescent_final",
    "run",
    "CycleDelays",
    "PolicyError",
    "SchedulerKind",
    "SchedulerPolicy",
    "TraceReplayScheduler",
    "mirrored_fsync_policy",
    "EventKind",
    "Outcome",
    "OutcomeStatus",
    "Trace",
    "TraceEvent",
    "replay_worlds",
]
