#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
第二阶段（单轴一致）：两个 candidate 位于同一竖线 L 上时打破对称。

每个周期由快照临时构造逻辑坐标系：原点为自身，+Y 指向同线上的伙伴 r'。
L' 为右侧最近的有机器人的竖线，K 为过 L' 上机器人平均高度的水平线。
λ 串在以 K ∩ L' 为原点、以 d_LL' 为单位的半平面坐标系中构造，
两个 candidate 因此得到相同的数值串。
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from core.geometry import RPoint
from core.model import Light, LocalView

from .actions import NULL_ACTION, LambdaString, move_to, set_color

ZERO = Fraction(0)


class IncompleteViewError(RuntimeError):
    """在没有完整可见性时比较完整 λ 串。"""


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Phase2Frame:
    """一次计算中使用的逻辑坐标系与 K / L' 几何量（均为调用者局部坐标）。"""
    partner: RPoint
    partner_light: Light
    toward: int          # 逻辑 +Y 在局部坐标中的符号
    line_x: Fraction     # L' 的 x
    k_y: Fraction        # K 的 y
    on_line: tuple       # L' 上的机器人

    @property
    def d_ll(self) -> Fraction:
        return self.line_x

    @property
    def d_self(self) -> Fraction:
        return abs(self.k_y)

    @property
    def d_partner(self) -> Fraction:
        return abs(self.partner.y - self.k_y)

    def logical_y(self, p: RPoint) -> Fraction:
        return self.toward * p.y

    def away(self, distance) -> RPoint:
        """远离伙伴竖直移动 distance 的局部目标点。"""
        return RPoint(ZERO, -self.toward * distance)


def phase2_frame(view: LocalView) -> Optional[Phase2Frame]:
    partners = [(p, c) for p, c in view.visible
                if p.x == 0 and c in (Light.CANDIDATE, Light.SYMMETRY)]
    if len(partners) != 1:
        return None
    partner, light = partners[0]
    right = [p for p in view.others() if p.x > 0]
    if not right:
        return None
    line_x = min(p.x for p in right)
    on_line = tuple(p for p in right if p.x == line_x)
    k_y = sum((p.y for p in on_line), ZERO) / len(on_line)
    return Phase2Frame(partner, light, _sign(partner.y), line_x, k_y, on_line)


@dataclass(frozen=True)
class LambdaStrings:
    own: LambdaString
    other: LambdaString
    own_prime: LambdaString
    other_prime: LambdaString
    full: bool

    def compare_full(self) -> int:
        if not self.full:
            raise IncompleteViewError("完整 λ 串需要看到全部 n 个机器人")
        if self.own == self.other:
            return 0
        return -1 if self.own < self.other else 1

    def compare_prime(self) -> int:
        if self.own_prime == self.other_prime:
            return 0
        return -1 if self.own_prime < self.other_prime else 1


def full_visibility(view: LocalView, frame: Phase2Frame) -> bool:
    """能看到全部机器人，且逻辑下方开半平面为空。"""
    if len(view.visible) + 1 != view.n:
        return False
    return not any(frame.logical_y(p) < 0 for p in view.others())


def lambda_strings(view: LocalView, frame: Phase2Frame) -> LambdaStrings:
    own_side = _sign(ZERO - frame.k_y)
    unit = frame.d_ll
    own_half: List[RPoint] = []
    other_half: List[RPoint] = []
    for p in view.others():
        if p == frame.partner:
            continue
        side = _sign(p.y - frame.k_y)
        if side == 0:
            continue
        q = RPoint((p.x - frame.line_x) / unit, abs(p.y - frame.k_y) / unit)
        (own_half if side == own_side else other_half).append(q)
    own, other = LambdaString.padded_pair(own_half, other_half)
    own_prime, other_prime = LambdaString.padded_pair(
        [q for q in own_half if q.x == 0], [q for q in other_half if q.x == 0])
    return LambdaStrings(own, other, own_prime, other_prime, full_visibility(view, frame))


def compute_destination2(view: LocalView, frame: Phase2Frame) -> RPoint:
    """
    沿自身水平线向左移动到与直线 r'r'' 交点距离的一半处；
    L' 在 r' 水平线外侧（远离自身一侧）没有机器人时左移一个单位。
    """
    a = frame.logical_y(frame.partner)
    beyond = [frame.logical_y(p) for p in frame.on_line if frame.logical_y(p) > a]
    if not beyond:
        return RPoint(Fraction(-1), ZERO)
    b = max(beyond)
    return RPoint(-Fraction(1, 2) * frame.d_ll * a / (b - a), ZERO)


def _candidate_step(view: LocalView):
    frame = phase2_frame(view)
    if frame is None:
        return NULL_ACTION
    d_self, d_partner = frame.d_self, frame.d_partner

    if frame.partner_light is Light.SYMMETRY:
        if d_self < d_partner:
            return move_to(frame.away(d_partner - d_self), "symmetry_align")
        if d_self == d_partner:
            return set_color(Light.SYMMETRY, "symmetry")
        return NULL_ACTION

    own_side = _sign(-frame.k_y)
    partner_side = _sign(frame.partner.y - frame.k_y)
    if own_side * partner_side >= 0:
        if d_self > d_partner:
            return move_to(compute_destination2(view, frame), "cd2_far")
        return NULL_ACTION

    strings = lambda_strings(view, frame)
    prime = strings.compare_prime()
    if prime < 0:
        return move_to(compute_destination2(view, frame), "cd2_prime")
    if prime > 0 or d_self < d_partner:
        return NULL_ACTION
    if not strings.full:
        return move_to(frame.away(d_self), "climb")
    order = strings.compare_full()
    if order < 0:
        return move_to(compute_destination2(view, frame), "cd2_lambda")
    if order > 0:
        return move_to(RPoint(frame.d_ll / 2, ZERO), "step_right")
    if any(p.y == frame.k_y for p in view.others()):
        return set_color(Light.SYMMETRY, "symmetry")
    return move_to(compute_destination2(view, frame), "cd2_symmetric")


def _off_step(view: LocalView):
    by_line = {}
    for p, c in view.visible:
        if c is Light.SYMMETRY and p.x < 0:
            by_line.setdefault(p.x, []).append(p)
    pairs = [pts for pts in by_line.values() if len(pts) == 2]
    if len(pairs) != 1:
        return NULL_ACTION
    low, high = sorted(pairs[0], key=lambda p: p.y)
    k_y = (low.y + high.y) / 2
    if k_y != 0:
        return NULL_ACTION
    if any(p.y == 0 and p.x < 0 for p in view.others()):
        return NULL_ACTION
    d = -low.x
    return move_to(RPoint(-(d + 1), ZERO), "break_symmetry")


def phase2_step(view: LocalView):
    own = view.own_color
    if own is Light.CANDIDATE:
        return _candidate_step(view)
    if own is Light.SYMMETRY:
        if any(c is Light.OFF and p.x < 0 for p, c in view.visible):
            return set_color(Light.OFF, "symmetry_reset")
        return NULL_ACTION
    if own is Light.OFF:
        return _off_step(view)
    return NULL_ACTION
