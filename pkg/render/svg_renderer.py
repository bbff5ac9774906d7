#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SVG 帧渲染模块
按事件下标采样轨迹：第 i 个事件满足 (i+1) % every == 0 时输出 frame_<i>.svg。
有理坐标只在这里转成 20 位十进制，渲染结果不回流到仿真。
"""
import logging
import os
from decimal import Decimal, localcontext
from fractions import Fraction
from html import escape

from apf.stage2 import AgreedFrame
from core.geometry import RPoint, format_rational, match_axis_aligned_similarity
from core.model import Light, SimulationFault, visible_set
from report.trace_saver import load_trace_jsonl, replay_worlds
from sim.trace import EventKind, point_from_json

logger = logging.getLogger(__name__)

DIGITS = 20
MARGIN = 24
ROBOT_RADIUS = 7
MARKER_RADIUS = 11

LIGHT_FILL = {
    Light.OFF: "#9ca3af",
    Light.TERMINAL: "#f97316",
    Light.CANDIDATE: "#3b82f6",
    Light.SYMMETRY: "#8b5cf6",
    Light.LEADER: "#ef4444",
    Light.DONE: "#22c55e",
}


def decimal_str(value) -> str:
    """有理数的 20 位有效数字十进制展开。"""
    q = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = DIGITS
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return format(d.normalize(), "f") if d else "0"


class _Viewport:
    """世界坐标 -> 像素坐标（y 轴翻转，保持纵横比）。"""

    def __init__(self, points, size):
        xs = [p.x for p in points] or [Fraction(0)]
        ys = [p.y for p in points] or [Fraction(0)]
        self.min_x, self.max_y = min(xs), max(ys)
        span = max(max(xs) - self.min_x, self.max_y - min(ys), Fraction(1))
        self.size = size
        self.scale = Fraction(size - 2 * MARGIN) / span

    def map(self, p: RPoint):
        x = MARGIN + (p.x - self.min_x) * self.scale
        y = MARGIN + (self.max_y - p.y) * self.scale
        return decimal_str(x), decimal_str(y)


def _trace_points(events, initial):
    points = [r.pos for r in initial.robots]
    for ev in events:
        if ev.kind == EventKind.MOVE_START.value:
            points.append(point_from_json(ev.detail["to"]))
    return points


def pattern_markers(world):
    """
    目标点的全局位置：
    leader 与 r_u 都在时按一致坐标系放置；图案已形成时按匹配到的相似变换放置；
    否则返回 None，由调用方画在图案自身坐标上。
    """
    pattern = world.pattern
    leaders = [r for r in world.robots if r.light is Light.LEADER]
    if len(leaders) == 1:
        leader = leaders[0].pos
        column = [r.pos for r in world.robots if r.pos.x == leader.x and r.pos != leader]
        if len(column) == 1:
            frame = AgreedFrame.from_leader(leader, column[0])
            return [frame.to_local(p) for p in pattern.points]
    if all(r.light is Light.DONE for r in world.robots):
        sim = match_axis_aligned_similarity(list(pattern.points), [r.pos for r in world.robots])
        if sim is not None:
            return [sim.apply(p) for p in pattern.points]
    return None


def _fallback_markers(world, viewport):
    # 把图案平移到视口左下角，按视口宽度缩放
    points = world.pattern.points
    min_x = min(p.x for p in points)
    min_y = min(p.y for p in points)
    span = max(max(p.x for p in points) - min_x, max(p.y for p in points) - min_y, Fraction(1))
    k = Fraction(viewport.size - 2 * MARGIN) / viewport.scale / span / 2
    base = RPoint(viewport.min_x, viewport.max_y - (viewport.size - 2 * MARGIN) / viewport.scale)
    return [RPoint(base.x + (p.x - min_x) * k, base.y + (p.y - min_y) * k) for p in points]


def render_frame(world, t, index, viewport, observer=None, kind=""):
    """渲染单帧，返回 SVG 文本。"""
    size = viewport.size
    parts = []
    markers = pattern_markers(world) or _fallback_markers(world, viewport)
    for p in markers:
        cx, cy = viewport.map(p)
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{MARKER_RADIUS}" fill="none" '
                     f'stroke="#111827" stroke-dasharray="3 2" stroke-width="1"/>')

    positions = world.positions_at(t)
    if observer is not None and 0 <= observer < len(world.robots):
        try:
            seen = visible_set(world, observer, t)
        except SimulationFault:
            seen = []
        ox, oy = viewport.map(positions[observer])
        for p, _ in seen:
            px, py = viewport.map(p)
            parts.append(f'<line x1="{ox}" y1="{oy}" x2="{px}" y2="{py}" stroke="#d1d5db" stroke-width="1"/>')

    for r, p in zip(world.robots, positions):
        cx, cy = viewport.map(p)
        title = escape(f"#{r.id} {r.light.value} ({format_rational(p.x)}, {format_rational(p.y)})")
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{ROBOT_RADIUS}" fill="{LIGHT_FILL[r.light]}" '
                     f'stroke="#111827" stroke-width="1"><title>{title}</title></circle>')

    caption = escape(f"event {index}  t={format_rational(t)}  {kind}")
    return f'''<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">
  <rect width="100%" height="100%" fill="#ffffff"/>
  <text x="6" y="14" font-family="monospace" font-size="11" fill="#374151">{caption}</text>
  {"".join(parts)}
</svg>
'''


def render_trace(trace_path, out_dir, every, observer=None, size=480):
    """
    读取轨迹文件并输出采样帧。

    Returns:
        写出的 SVG 路径列表；空轨迹返回空列表并记录警告
    """
    if every < 1:
        raise ValueError("every 必须 >= 1")
    header, events, _ = load_trace_jsonl(trace_path)
    if not events:
        logger.warning("轨迹 %s 不含事件，未输出任何帧", trace_path)
        return []

    os.makedirs(out_dir, exist_ok=True)
    frames = replay_worlds(header, events)
    viewport = None
    written = []
    for index, (ev, world) in enumerate(frames):
        if viewport is None:
            viewport = _Viewport(_trace_points(events, world), size)
        if (index + 1) % every:
            continue
        svg = render_frame(world, ev.t, index, viewport, observer, ev.kind)
        path = os.path.join(out_dir, f"frame_{index:06d}.svg")
        with open(path, "w", encoding="utf-8") as f:
            f.write(svg)
        written.append(path)
    return written
