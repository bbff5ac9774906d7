#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
算法输出类型：Action（可选新颜色 + 可选局部目标点）与 λ 串。
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Optional, Tuple

from core.geometry import RPoint
from core.model import Light


@dataclass(frozen=True)
class Action:
    """
    颜色变更先于移动执行。rule 只用于轨迹诊断，不参与相等比较。
    """
    new_color: Optional[Light] = None
    destination: Optional[RPoint] = None
    rule: str = field(default="", compare=False)

    @property
    def is_null(self) -> bool:
        return self.new_color is None and self.destination is None


NULL_ACTION = Action()


def set_color(color: Light, rule: str) -> Action:
    return Action(new_color=color, rule=rule)


def move_to(destination: RPoint, rule: str, color: Optional[Light] = None) -> Action:
    return Action(new_color=color, destination=destination, rule=rule)


def _term_key(term):
    # 任意点都小于 Φ（None）
    return (1,) if term is None else (0, term.x, term.y)


@total_ordering
@dataclass(frozen=True)
class LambdaString:
    """λ 串：排好序的点，末尾用 Φ（None）补齐到与对方等长。"""
    terms: Tuple[Optional[RPoint], ...]

    def _key(self):
        return tuple(_term_key(t) for t in self.terms)

    def __lt__(self, other):
        if not isinstance(other, LambdaString):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self):
        return "".join("Φ" if t is None else f"({t.x},{t.y})" for t in self.terms)

    @classmethod
    def padded_pair(cls, left, right):
        """两组点各自排序并补齐到相同长度。"""
        left, right = sorted(left), sorted(right)
        width = max(len(left), len(right))
        return (cls(tuple(left) + (None,) * (width - len(left))),
                cls(tuple(right) + (None,) * (width - len(right))))
