#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
精确有理数几何模块
包含有理数解析/序列化、点类型、共线与开线段判定、字典序比较、
水平对称轴检测，以及轴对齐相似变换的搜索与应用。
所有运算均为精确有理运算，不经过浮点。
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

Rational = Fraction


def parse_rational(value) -> Fraction:
    """
    将 "p/q"、"p" 或整数解析为 Fraction。
    浮点数（含 "1.5" 这样的小数字符串）一律拒绝，避免精度被悄悄丢掉。
    """
    if isinstance(value, bool):
        raise ValueError(f"不是有理数：{value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ValueError(f"有理数必须写成字符串 \"p/q\"，收到 {type(value).__name__}：{value!r}")
    text = value.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"不接受小数或科学计数法：{value!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"无法解析有理数 {value!r}：{e}") from e


def format_rational(value: Fraction) -> str:
    """序列化为 "p/q"，分母为 1 时只写 "p"。"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class RPoint(NamedTuple):
    """精确二维点；元组比较即字典序。"""
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "RPoint":
        return cls(Fraction(x), Fraction(y))

    def __add__(self, other):  # type: ignore[override]
        return RPoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return RPoint(self.x - other[0], self.y - other[1])

    def scaled(self, k) -> "RPoint":
        return RPoint(self.x * k, self.y * k)

    def to_json(self):
        return [format_rational(self.x), format_rational(self.y)]


def cross(o: RPoint, a: RPoint, b: RPoint) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def strictly_between(a: RPoint, b: RPoint, c: RPoint) -> bool:
    """b 是否位于开线段 (a, c) 内部：共线且严格在两端点之间。a == c 时返回 False。"""
    if a == c or b == a or b == c:
        return False
    if cross(a, b, c) != 0:
        return False
    # 共线时，b 在内部当且仅当 (b - a) 与 (c - b) 同向
    return (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) > 0


def lex_compare(p: RPoint, q: RPoint) -> int:
    """字典序比较，返回 -1 / 0 / 1。"""
    if p == q:
        return 0
    return -1 if (p.x, p.y) < (q.x, q.y) else 1


def horizontal_symmetry_axis(points: Iterable[RPoint]):
    """
    检测点集是否关于某条水平线镜像对称。

    Returns:
        (axis_y, has_point_on_axis) 或 None（不对称 / 空集）
    """
    pts = set(points)
    if not pts:
        return None
    ys = [p.y for p in pts]
    axis = (min(ys) + max(ys)) / 2
    for p in pts:
        if RPoint(p.x, 2 * axis - p.y) not in pts:
            return None
    return axis, any(p.y == axis for p in pts)


# 8 个轴对齐等距变换，以 2x2 矩阵 (a, b, c, d) 表示：(x, y) -> (a·x + b·y, c·x + d·y)
ISOMETRIES = (
    (1, 0, 0, 1),    # 恒等
    (0, -1, 1, 0),   # 旋转 90°
    (-1, 0, 0, -1),  # 旋转 180°
    (0, 1, -1, 0),   # 旋转 270°
    (1, 0, 0, -1),   # 关于 X 轴反射
    (-1, 0, 0, 1),   # 关于 Y 轴反射
    (0, 1, 1, 0),    # 关于 y = x 反射
    (0, -1, -1, 0),  # 关于 y = -x 反射
)


def _apply_matrix(m, p: RPoint) -> RPoint:
    a, b, c, d = m
    return RPoint(a * p.x + b * p.y, c * p.x + d * p.y)


def _inverse_index(index: int) -> int:
    a, b, c, d = ISOMETRIES[index]
    # 正交矩阵的逆即转置
    return ISOMETRIES.index((a, c, b, d))


@dataclass(frozen=True)
class AxisAlignedSimilarity:
    """T(p) = scale · M(p) + translation，M 取自 ISOMETRIES。"""
    isometry: int
    scale: Fraction
    translation: RPoint

    def __post_init__(self):
        if not 0 <= self.isometry < len(ISOMETRIES):
            raise ValueError(f"等距变换编号越界：{self.isometry}")
        if self.scale <= 0:
            raise ValueError("缩放系数必须为正")

    def apply(self, p: RPoint) -> RPoint:
        return _apply_matrix(ISOMETRIES[self.isometry], p).scaled(self.scale) + self.translation

    def inverse(self) -> "AxisAlignedSimilarity":
        inv = _inverse_index(self.isometry)
        back = _apply_matrix(ISOMETRIES[inv], self.translation).scaled(-1 / self.scale)
        return AxisAlignedSimilarity(inv, 1 / self.scale, back)


def match_axis_aligned_similarity(A, B) -> Optional[AxisAlignedSimilarity]:
    """
    在「8 个轴对齐等距 × 正缩放 × 平移」中寻找 T 使 T(A) = B（集合意义）。
    正缩放与平移保持字典序，因此对每个等距变换，排序后的像与 B 逐项对应：
    用两端极值确定缩放与平移，再逐点核对。
    """
    A = list(A)
    B = sorted(B)
    if len(A) != len(B) or not A:
        return None
    for index, m in enumerate(ISOMETRIES):
        image = sorted(_apply_matrix(m, p) for p in A)
        if len(image) == 1:
            scale = Fraction(1)
        else:
            span_a = image[-1] - image[0]
            span_b = B[-1] - B[0]
            if span_a.x != 0:
                scale = span_b.x / span_a.x
            else:
                scale = span_b.y / span_a.y
            if scale <= 0:
                continue
        translation = B[0] - image[0].scaled(scale)
        if all(p.scaled(scale) + translation == q for p, q in zip(image, B)):
            return AxisAlignedSimilarity(index, scale, translation)
    return None
