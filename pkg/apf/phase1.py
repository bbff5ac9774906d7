#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
第一阶段（单轴一致）：从初始配置选出 leader，
或者在最左竖线上产生两个 candidate 交给第二阶段。
所有坐标都是调用者局部坐标，自身在原点。
"""
from fractions import Fraction

from core.geometry import RPoint
from core.model import Light, LocalView

from .actions import NULL_ACTION, move_to, set_color

ZERO = Fraction(0)


def become_leader(view: LocalView):
    """
    下方闭半平面内除自身外没有机器人时点亮 leader；
    否则取最低的可见机器人（并列取最左），向下移动 d+1。
    """
    below = [p for p in view.others() if p.y <= 0]
    if not below:
        return set_color(Light.LEADER, "become_leader")
    lowest = min(below, key=lambda p: (p.y, p.x))
    d = -lowest.y
    return move_to(RPoint(ZERO, -(d + 1)), "descend")


def leftmost_terminal(view: LocalView) -> bool:
    left = [(p, c) for p, c in view.visible if p.x < 0]
    column = [p for p in view.others() if p.x == 0]
    above_empty = not any(p.y > 0 for p in column)
    below_empty = not any(p.y < 0 for p in column)
    if not left:
        return above_empty or below_empty
    if len(left) == 1 and left[0][1] is Light.CANDIDATE:
        partner = left[0][0]
        if partner.y > 0:
            return below_empty
        if partner.y < 0:
            return above_empty
        # 同高时「远离它的一侧」无定义，不认定为端点
        return False
    return False


def compute_destination(view: LocalView) -> RPoint:
    right = [p.x for p in view.others() if p.x > 0]
    if not right:
        return RPoint(Fraction(-1), ZERO)
    return RPoint(-min(right), ZERO)


def phase1_step(view: LocalView):
    own = view.own_color
    if own is Light.OFF:
        unique_leftmost = not any(p.x <= 0 for p in view.others())
        all_off = all(c is Light.OFF for _, c in view.visible)
        if unique_leftmost and all_off:
            return become_leader(view)
        if leftmost_terminal(view):
            return move_to(compute_destination(view), "terminal_shift", color=Light.TERMINAL)
        return NULL_ACTION
    if own is Light.TERMINAL:
        return set_color(Light.CANDIDATE, "candidate")
    if own is Light.CANDIDATE:
        candidate_right = any(c is Light.CANDIDATE and p.x > 0 for p, c in view.visible)
        off_left = any(c is Light.OFF and p.x < 0 for p, c in view.visible)
        if candidate_right or off_left:
            return set_color(Light.OFF, "candidate_reset")
    return NULL_ACTION
