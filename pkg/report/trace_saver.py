"""
轨迹保存模块
包含轨迹 JSONL 的写入/读取、从头记录重放世界，以及批量结果 CSV
"""
import csv
import json
import os

from core.scenario import ScenarioError, parse_scenario
from core.utils import safe_print
from sim.engine import colors_used
from sim.trace import EventKind, TraceEvent, replay_worlds as _replay_from_world

BATCH_COLUMNS = ["seed", "status", "events", "first_leader_event", "colors_used"]


class TraceFileError(ValueError):
    """轨迹文件无法读取或格式错误。"""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"第 {line} 行：{message}" if line else message)


def _dumps(record):
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"), sort_keys=True)


def save_trace_jsonl(trace, outcome, path):
    """首行为头记录，随后每行一个事件，末行为结果记录。"""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    header = {"kind": "header"}
    header.update(trace.metadata)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(_dumps(header) + "\n")
        for ev in trace.events:
            f.write(_dumps(ev.to_record()) + "\n")
        if outcome is not None:
            f.write(_dumps(outcome.to_record()) + "\n")
    return path


def load_trace_jsonl(path):
    """
    读取轨迹文件，返回 (header, events, outcome_record)。
    outcome_record 缺失时为 None（例如被中断的运行）。
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise TraceFileError(f"无法读取轨迹文件 {path}：{e}")

    header = None
    events = []
    outcome = None
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
        except json.JSONDecodeError as e:
            raise TraceFileError(f"JSON 解析失败：{e.msg}", line=lineno)
        if not isinstance(record, dict):
            raise TraceFileError("每行必须是 JSON 对象", line=lineno)
        kind = record.get("kind")
        if kind == "header":
            if header is not None or events:
                raise TraceFileError("头记录只能出现在第一行", line=lineno)
            header = record
        elif kind == "outcome":
            if outcome is not None:
                raise TraceFileError("重复的结果记录", line=lineno)
            outcome = record
        else:
            if outcome is not None:
                raise TraceFileError("结果记录之后不能再有事件", line=lineno)
            try:
                EventKind(kind)
                events.append(TraceEvent.from_record(record))
            except (KeyError, TypeError, ValueError) as e:
                raise TraceFileError(f"事件记录无效：{e}", line=lineno)
    if header is None:
        raise TraceFileError("缺少头记录")
    return header, events, outcome


def initial_world(header):
    """从头记录中的场景重建初始世界。"""
    scenario = header.get("scenario")
    if not isinstance(scenario, dict):
        raise TraceFileError("头记录缺少 scenario")
    try:
        return parse_scenario(json.dumps(scenario))
    except ScenarioError as e:
        raise TraceFileError(f"头记录中的场景无效：{e}")


def replay_worlds(header, events):
    """按头记录中的场景重放事件，产出 (事件, 事件后的世界)。"""
    return _replay_from_world(initial_world(header), events)


def first_leader_event(trace):
    """首个把灯光设为 leader 的 color_commit 事件下标；没有则为 None。"""
    for i, ev in enumerate(trace.events):
        if ev.kind == EventKind.COLOR_COMMIT.value and ev.detail.get("light") == "leader":
            return i
    return None


def batch_row(seed, world, trace, outcome):
    return {
        "seed": seed,
        "status": outcome.status.value,
        "events": outcome.event_count,
        "first_leader_event": first_leader_event(trace),
        "colors_used": "|".join(light.value for light in colors_used(world, trace)),
    }


def save_batch_csv(rows, path):
    """写出批量结果表；行按 seed 排序。"""
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=BATCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in sorted(rows, key=lambda r: r["seed"]):
            writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in BATCH_COLUMNS})
    safe_print(f"\n批量结果已保存至：{path}")
    return path
