#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
碰撞检测：对每对线性运动求解精确的重合时刻，返回最早的一次。
"""
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from core.geometry import RPoint

MotionSpec = Tuple[RPoint, RPoint, Fraction, Fraction]


def _affine(motion: MotionSpec):
    """把运动写成 p(t) = c + v·t。"""
    start, end, t0, t1 = motion
    if t1 == t0 or start == end:
        return RPoint(end.x, end.y), RPoint(Fraction(0), Fraction(0))
    span = t1 - t0
    v = RPoint((end.x - start.x) / span, (end.y - start.y) / span)
    return RPoint(start.x - v.x * t0, start.y - v.y * t0), v


def _parked(motion: MotionSpec) -> bool:
    return motion[2] == motion[3]


def _meet_time(a: MotionSpec, b: MotionSpec) -> Optional[Fraction]:
    # 零时长的运动视为停在终点、在对方整个时间段内都存在的障碍
    if _parked(a) and _parked(b):
        return max(a[2], b[2]) if a[1] == b[1] else None
    spans = [m for m in (a, b) if not _parked(m)]
    lo = max(m[2] for m in spans)
    hi = min(m[3] for m in spans)
    if lo > hi:
        return None
    ca, va = _affine(a)
    cb, vb = _affine(b)
    c = ca - cb
    w = va - vb
    if w.x == 0 and w.y == 0:
        return lo if c.x == 0 and c.y == 0 else None
    if w.x != 0:
        t = -c.x / w.x
        if c.y + w.y * t != 0:
            return None
    else:
        if c.x != 0:
            return None
        t = -c.y / w.y
    return t if lo <= t <= hi else None


def collision_check(motions: Sequence[MotionSpec]) -> Optional[Tuple[Fraction, Tuple[int, int]]]:
    """
    Args:
        motions: [(起点, 终点, 开始时刻, 结束时刻), ...]，静止机器人起点等于终点；
            开始时刻等于结束时刻的项视为停在终点的障碍

    Returns:
        (最早重合时刻, (i, j)) 或 None
    """
    best = None
    for i in range(len(motions)):
        for j in range(i + 1, len(motions)):
            t = _meet_time(motions[i], motions[j])
            if t is not None and (best is None or t < best[0]):
                best = (t, (i, j))
    return best
