#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置分类、可解性判定与图案完成判定。
这些函数只作为测试与命令行的判定依据，机器人算法从不调用。
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from apf.stage2 import AgreedFrame, psi_targets
from core.geometry import RPoint, horizontal_symmetry_axis, match_axis_aligned_similarity
from core.model import Light, Mode, WorldConfig


class UnstableWorldError(RuntimeError):
    """分类要求全部机器人稳定。"""


class ConfigClass(str, Enum):
    LEADER = "leader"
    CANDIDATE = "candidate"
    AGREEMENT = "agreement"
    L_CONFIG = "L_config"
    FINAL_FORMED = "final_formed"
    OTHER = "other"


@dataclass(frozen=True)
class Solvability:
    solvable: bool
    axis_y: Optional[Fraction] = None


def pattern_formed(world: WorldConfig, pattern=None) -> bool:
    pattern = pattern or world.pattern
    if any(r.light is not Light.DONE for r in world.robots):
        return False
    return match_axis_aligned_similarity(world.positions_at(), pattern.points) is not None


def check_solvable(world: WorldConfig, mode: Optional[Mode] = None) -> Solvability:
    """单轴一致下，存在不含机器人的水平对称轴即不可解；双轴一致总是可解。"""
    mode = mode or world.mode
    if mode is Mode.TWO_AXIS:
        return Solvability(True)
    found = horizontal_symmetry_axis(r.pos for r in world.robots)
    if found is not None and not found[1]:
        return Solvability(False, found[0])
    return Solvability(True)


def _leader_split(world):
    leaders = [r for r in world.robots if r.light is Light.LEADER]
    if len(leaders) != 1:
        return None, []
    leader = leaders[0]
    rest = [r for r in world.robots if r is not leader]
    if any(r.light is not Light.OFF for r in rest):
        return None, []
    return leader, rest


def _classify_stage2(world):
    leader, rest = _leader_split(world)
    if leader is None:
        return None
    lp = leader.pos
    up = leader.frame.y_sign

    def above(p, ref):
        return up * (p.y - ref.y) > 0

    if all(r.pos.x > lp.x and above(r.pos, lp) for r in rest):
        return ConfigClass.LEADER
    column = [r for r in rest if r.pos.x == lp.x]
    if len(column) != 1 or not above(column[0].pos, lp):
        return None
    upper = column[0].pos
    others = [r.pos for r in rest if r is not column[0]]
    if all(p.x > lp.x and up * (p.y - upper.y) >= 0 for p in others):
        return ConfigClass.AGREEMENT
    frame = AgreedFrame.from_leader(lp, upper)
    psi, _ = psi_targets(world.pattern)
    staging = {RPoint(psi[i], Fraction(-1)) for i in range(2, len(world.pattern))}
    if {frame.to_agreed(p) for p in others} == staging and len(others) == len(staging):
        return ConfigClass.L_CONFIG
    return None


def _classify_candidate(world):
    candidates = [r for r in world.robots if r.light is Light.CANDIDATE]
    if len(candidates) != 2 or candidates[0].pos.x != candidates[1].pos.x:
        return None
    x = candidates[0].pos.x
    rest = [r for r in world.robots if r.light is not Light.CANDIDATE]
    if all(r.light is Light.OFF and r.pos.x > x for r in rest):
        return ConfigClass.CANDIDATE
    return None


def classify(world: WorldConfig, pattern=None, mode=None) -> ConfigClass:
    """
    按定义逐条判断配置类别；彼此互斥，都不满足时返回 OTHER。
    pattern / mode 缺省取 world 自带的值；双轴一致模式没有 candidate 类。
    """
    if not world.all_stable:
        raise UnstableWorldError("存在未稳定的机器人，无法分类")
    if pattern is not None and pattern is not world.pattern:
        world = WorldConfig(world.robots, world.mode, pattern, world.time)
    mode = mode or world.mode
    if pattern_formed(world):
        return ConfigClass.FINAL_FORMED
    found = _classify_stage2(world)
    if found is None and mode is Mode.ONE_AXIS:
        found = _classify_candidate(world)
    return found or ConfigClass.OTHER
