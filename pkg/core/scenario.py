#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
场景文件读写模块
场景 JSON：{"mode": "one-axis"|"two-axis",
           "robots": [{"x": "p/q", "y": "p/q", "y_sign": 1|-1, "unit": "p/q", "light": "off"?}],
           "pattern": [["x", "y"], ...]}
有理数一律写成字符串；浮点字面量直接拒绝。
"""
import json
from pathlib import Path

from .geometry import RPoint, format_rational, parse_rational
from .model import LocalFrame, Light, Mode, Pattern, RobotState, TWO_AXIS_LIGHTS, WorldConfig


class ScenarioError(ValueError):
    """场景解析或校验失败，line / field 指向出错位置。"""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"第 {line} 行")
        if field:
            where.append(f"字段 {field}")
        prefix = "（" + "，".join(where) + "）" if where else ""
        super().__init__(f"{message}{prefix}")


def _reject_float(text):
    raise ValueError(f"不接受浮点字面量 {text}，请写成字符串 \"p/q\"")


def _line_of(text, pos):
    return text.count("\n", 0, pos) + 1


def _loads(text):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"JSON 语法错误：{e.msg}", line=e.lineno) from e
    except ValueError as e:
        raise ScenarioError(str(e), line=_locate_float(text)) from e


def _locate_float(text):
    # 找到第一个未加引号的小数，给出行号
    in_string = False
    escaped = False
    for i, ch in enumerate(text):
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch in ".eE" and i > 0 and text[i - 1].isdigit():
            return _line_of(text, i)
    return None


def _rational(value, field):
    try:
        return parse_rational(value)
    except ValueError as e:
        raise ScenarioError(str(e), field=field) from e


def _point(entry, field):
    if not isinstance(entry, (list, tuple)) or len(entry) != 2:
        raise ScenarioError("图案点必须是 [x, y] 两元素数组", field=field)
    return RPoint(_rational(entry[0], f"{field}[0]"), _rational(entry[1], f"{field}[1]"))


def parse_pattern(data, field="pattern"):
    if isinstance(data, dict):
        data = data.get("pattern")
    if not isinstance(data, list) or not data:
        raise ScenarioError("图案必须是非空数组", field=field)
    points = [_point(entry, f"{field}[{i}]") for i, entry in enumerate(data)]
    try:
        return Pattern(tuple(points))
    except ValueError as e:
        raise ScenarioError(str(e), field=field) from e


def parse_scenario(text, pattern_text=None):
    """
    解析场景文本，返回 WorldConfig。

    Args:
        text: 场景 JSON 文本
        pattern_text: 可选的独立图案 JSON 文本；提供时覆盖场景内的 pattern
    """
    data = _loads(text)
    if not isinstance(data, dict):
        raise ScenarioError("场景顶层必须是 JSON 对象", line=1)
    mode_raw = data.get("mode", Mode.ONE_AXIS.value)
    try:
        mode = Mode(mode_raw)
    except ValueError:
        raise ScenarioError(f"未知模式 {mode_raw!r}，可选 one-axis / two-axis", field="mode")

    if pattern_text is not None:
        pattern = parse_pattern(_loads(pattern_text))
    elif "pattern" in data:
        pattern = parse_pattern(data["pattern"])
    else:
        raise ScenarioError("缺少 pattern（可内联或通过 --pattern 指定）", field="pattern")

    robots_raw = data.get("robots")
    if not isinstance(robots_raw, list) or not robots_raw:
        raise ScenarioError("robots 必须是非空数组", field="robots")
    robots = []
    seen = {}
    for i, entry in enumerate(robots_raw):
        field = f"robots[{i}]"
        if not isinstance(entry, dict):
            raise ScenarioError("机器人条目必须是对象", field=field)
        pos = RPoint(_rational(entry.get("x"), f"{field}.x"), _rational(entry.get("y"), f"{field}.y"))
        if pos in seen:
            raise ScenarioError(f"与 robots[{seen[pos]}] 位置重复", field=field)
        seen[pos] = i
        y_sign = entry.get("y_sign", 1)
        if y_sign not in (1, -1) or isinstance(y_sign, bool):
            raise ScenarioError(f"y_sign 只能为 1 或 -1：{y_sign!r}", field=f"{field}.y_sign")
        if mode is Mode.TWO_AXIS and y_sign != 1:
            raise ScenarioError("two-axis 模式下 y_sign 必须为 +1", field=f"{field}.y_sign")
        unit = _rational(entry.get("unit", "1"), f"{field}.unit")
        if unit <= 0:
            raise ScenarioError("unit 必须为正", field=f"{field}.unit")
        try:
            light = Light(entry.get("light", Light.OFF.value))
        except ValueError:
            raise ScenarioError(f"未知灯光颜色 {entry.get('light')!r}", field=f"{field}.light")
        if mode is Mode.TWO_AXIS and light not in TWO_AXIS_LIGHTS:
            raise ScenarioError("two-axis 模式只允许 off / leader / done", field=f"{field}.light")
        robots.append(RobotState(i, pos, light, LocalFrame(y_sign, unit)))

    if len(robots) != len(pattern):
        raise ScenarioError(f"机器人数量 {len(robots)} 与图案点数 {len(pattern)} 不一致", field="pattern")
    return WorldConfig(robots, mode, pattern)


def load_scenario(path, pattern_path=None):
    """从文件读取场景；读取失败同样以 ScenarioError 报告。"""
    try:
        text = Path(path).read_text(encoding="utf-8")
        pattern_text = Path(pattern_path).read_text(encoding="utf-8") if pattern_path else None
    except OSError as e:
        raise ScenarioError(f"无法读取文件：{e}") from e
    return parse_scenario(text, pattern_text)


def scenario_to_dict(world):
    """WorldConfig -> 场景字典（只写初始数据，不含活动阶段）。"""
    robots = []
    for r in world.robots:
        entry = {
            "x": format_rational(r.pos.x),
            "y": format_rational(r.pos.y),
            "y_sign": r.frame.y_sign,
            "unit": format_rational(r.frame.unit),
        }
        if r.light is not Light.OFF:
            entry["light"] = r.light.value
        robots.append(entry)
    return {
        "mode": world.mode.value,
        "robots": robots,
        "pattern": [p.to_json() for p in world.pattern.points],
    }


def dump_scenario(world):
    return json.dumps(scenario_to_dict(world), ensure_ascii=False, indent=2)


def witness_pattern(k):
    """
    n = 3k+2 的共线图案：P[0] = (0,0)，P[n-1] = (4k+2, 0)，
    j = 1..k 时依次为 (4j-2, 0)、(4j-1, 0)、(4j, 0)。
    """
    if k < 1:
        raise ValueError("k 必须 >= 1")
    xs = [0]
    for j in range(1, k + 1):
        xs.extend([4 * j - 2, 4 * j - 1, 4 * j])
    xs.append(4 * k + 2)
    return Pattern(tuple(RPoint.of(x, 0) for x in xs))
