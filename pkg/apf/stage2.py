#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
第二段：leader 已选出后的图案嵌入。

1. 象限内的 off 机器人按「自下而上、自左而右」依次移动：
   第一个移到 leader 所在竖线（成为 r_u），之后的依次移到 (Ψ(i), -1)。
2. 一致坐标系：leader 在 (-1,-1)，r_u 在 (-1,0)，单位为二者距离，
   「上」为从 leader 指向其他机器人的方向。
3. 横线上的机器人按 i = 2, 3, ... 依次点亮 done 并移到 P[i]；
   r_u 随后移到 P[1]，最后 leader 移到 P[0]。
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from core.geometry import RPoint
from core.model import Light, LocalView, Pattern

from .actions import NULL_ACTION, move_to, set_color

ZERO = Fraction(0)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def psi_targets(pattern: Pattern) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """
    Ψ(i) = x_i + (k-1) / (2(m_i-1)) · ε；m_i = 1 时偏移为 0。
    ε 为不同竖线之间的最小水平间距，全部共线时取 1。

    Returns:
        (Ψ(0..n-1), ε)
    """
    xs = sorted({p.x for p in pattern.points})
    if len(xs) == 1:
        eps = Fraction(1)
    else:
        eps = min(b - a for a, b in zip(xs, xs[1:]))
    counts = {}
    for p in pattern.points:
        counts[p.x] = counts.get(p.x, 0) + 1
    psi = []
    rank = {}
    # 图案按字典序排列，同一竖线上的点自下而上出现
    for p in pattern.points:
        k = rank.get(p.x, 0) + 1
        rank[p.x] = k
        m = counts[p.x]
        offset = ZERO if m == 1 else Fraction(k - 1, 2 * (m - 1)) * eps
        psi.append(p.x + offset)
    return tuple(psi), eps


@dataclass(frozen=True)
class AgreedFrame:
    """调用者局部坐标与一致坐标之间的换算。"""
    origin: RPoint
    unit: Fraction
    up: int

    @classmethod
    def from_leader(cls, leader: RPoint, upper: RPoint) -> "AgreedFrame":
        unit = abs(upper.y - leader.y)
        up = _sign(upper.y - leader.y)
        return cls(RPoint(leader.x + unit, leader.y + up * unit), unit, up)

    def to_agreed(self, p: RPoint) -> RPoint:
        return RPoint((p.x - self.origin.x) / self.unit, self.up * (p.y - self.origin.y) / self.unit)

    def to_local(self, q: RPoint) -> RPoint:
        return RPoint(self.origin.x + q.x * self.unit, self.origin.y + self.up * q.y * self.unit)


def _leader(view: LocalView) -> Optional[RPoint]:
    leaders = view.others(Light.LEADER)
    return leaders[0] if len(leaders) == 1 else None


def _upper(view: LocalView, leader: RPoint) -> Optional[RPoint]:
    column = [p for p in view.others() if p.x == leader.x and p != leader]
    return column[0] if len(column) == 1 else None


def agreed_frame(view: LocalView) -> Optional[AgreedFrame]:
    """由可见的 leader 与 r_u 构造一致坐标系；调用者自己是 r_u 时同样适用。"""
    leader = _leader(view)
    if leader is None:
        return None
    if leader.x == 0:
        return AgreedFrame.from_leader(leader, RPoint(ZERO, ZERO))
    upper = _upper(view, leader)
    if upper is None:
        return None
    return AgreedFrame.from_leader(leader, upper)


def partial_formation(view: LocalView, i: int, frame: Optional[AgreedFrame] = None) -> bool:
    if i == 2:
        return True
    frame = frame or agreed_frame(view)
    if frame is None:
        return False
    target = frame.to_local(view.pattern[i - 1])
    return any(c is Light.DONE and p == target for p, c in view.visible)


def _sweep_step(view: LocalView, leader: RPoint):
    # leader 在左下方
    if any(c is Light.DONE for _, c in view.visible):
        return set_color(Light.DONE, "adopt_done")
    up = _sign(-leader.y)
    for p in view.others():
        if p.x > leader.x and up * leader.y < up * p.y < 0:
            return NULL_ACTION
        if p.y == 0 and leader.x < p.x < 0:
            return NULL_ACTION
    upper = [p for p in view.others() if p.x == leader.x and p != leader]
    if not upper:
        return move_to(RPoint(leader.x, ZERO), "join_column")
    if len(upper) != 1:
        return NULL_ACTION
    frame = AgreedFrame.from_leader(leader, upper[0])
    k = sum(1 for p, c in view.visible if c is Light.OFF and p.y == leader.y)
    psi, _ = psi_targets(view.pattern)
    if k + 2 >= view.n:
        return NULL_ACTION
    return move_to(frame.to_local(RPoint(psi[k + 2], Fraction(-1))), "stage_line")


def _staging_step(view: LocalView, leader: RPoint):
    # 与 leader 同高
    upper = _upper(view, leader)
    if upper is None:
        return NULL_ACTION
    frame = AgreedFrame.from_leader(leader, upper)
    if any(c is Light.OFF and frame.up * p.y > 0 and p.x > leader.x for p, c in view.visible):
        return NULL_ACTION
    me = frame.to_agreed(RPoint(ZERO, ZERO))
    if me.y != -1:
        return NULL_ACTION
    psi, _ = psi_targets(view.pattern)
    for i in range(2, view.n):
        if psi[i] == me.x:
            if not partial_formation(view, i, frame):
                return NULL_ACTION
            return move_to(frame.to_local(view.pattern[i]), "form_target", color=Light.DONE)
    return NULL_ACTION


def _upper_step(view: LocalView, leader: RPoint):
    # 与 leader 同一竖线：自己就是 r_u
    up = _sign(-leader.y)
    for p, c in view.visible:
        if c is Light.OFF and up * p.y >= 0:
            return NULL_ACTION
        if up * p.y < 0 and p != leader:
            return NULL_ACTION
    if view.n == 2:
        return set_color(Light.DONE, "pair_done")
    frame = AgreedFrame.from_leader(leader, RPoint(ZERO, ZERO))
    return move_to(frame.to_local(view.pattern[1]), "upper_target")


def _leader_step(view: LocalView):
    if not view.visible:
        return set_color(Light.DONE, "lone_done")
    if any(c is Light.OFF for _, c in view.visible):
        return NULL_ACTION
    pattern = view.pattern
    if view.n == 2:
        q = view.visible[0][0]
        if len(view.visible) != 1 or q.x != 0:
            return NULL_ACTION
        frame = AgreedFrame.from_leader(RPoint(ZERO, ZERO), q)
        delta = pattern[0] - pattern[1]
        target = RPoint(q.x + delta.x * frame.unit, q.y + frame.up * delta.y * frame.unit)
        return move_to(target, "pair_leader", color=Light.DONE)
    up = next((_sign(p.y) for p in view.others() if p.y != 0), 0)
    if up == 0:
        return NULL_ACTION
    q = min(view.others(), key=lambda p: (p.x, up * p.y))
    if q.x <= 0:
        return NULL_ACTION
    unit = q.x / (pattern[1].x + 1)
    s0 = RPoint((pattern[0].x + 1) * unit, up * (pattern[0].y + 1) * unit)
    return move_to(s0, "leader_target", color=Light.DONE)


def stage2_step(view: LocalView):
    if view.own_color is Light.LEADER:
        return _leader_step(view)
    if view.own_color is not Light.OFF:
        return NULL_ACTION
    leader = _leader(view)
    if leader is None:
        return NULL_ACTION
    if leader.x < 0 and leader.y != 0:
        return _sweep_step(view, leader)
    if leader.x < 0:
        return _staging_step(view, leader)
    if leader.x == 0:
        return _upper_step(view, leader)
    return NULL_ACTION
