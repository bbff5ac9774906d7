#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
算法入口：按灯光把快照分派到第一阶段、第二阶段或第二段，
以及双轴一致模式下的三色变体。
"""
from fractions import Fraction

from core.geometry import RPoint
from core.model import Light, LocalView, Mode

from .actions import NULL_ACTION, move_to
from .phase1 import become_leader, phase1_step
from .phase2 import phase2_step
from .stage2 import stage2_step


def _candidates_share_line(view: LocalView) -> bool:
    xs = [p.x for p in view.others(Light.CANDIDATE)]
    if view.own_color is Light.CANDIDATE:
        xs.append(Fraction(0))
    return len(xs) != len(set(xs))


def dispatch(view: LocalView):
    """单轴一致模式。"""
    if view.has_light(Light.LEADER):
        return stage2_step(view)
    if _candidates_share_line(view) or view.has_light(Light.SYMMETRY):
        return phase2_step(view)
    return phase1_step(view)


def two_axis_step(view: LocalView):
    """双轴一致模式：最左竖线上有多个机器人时，最下方的那个左移一步。"""
    if view.has_light(Light.LEADER):
        return stage2_step(view)
    if view.own_color is not Light.OFF:
        return NULL_ACTION
    others = view.others()
    if not any(p.x <= 0 for p in others) and all(c is Light.OFF for _, c in view.visible):
        return become_leader(view)
    if any(p.x < 0 for p in others):
        return NULL_ACTION
    if any(p.x == 0 and p.y < 0 for p in others):
        return NULL_ACTION
    if any(p.x == 0 for p in others):
        return move_to(RPoint(Fraction(-1), Fraction(0)), "shift_left")
    return NULL_ACTION


def decide(view: LocalView, mode: Mode):
    if mode is Mode.TWO_AXIS:
        return two_axis_step(view)
    return dispatch(view)
