#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
批量运行进度写入模块，供 Web 前端读取并展示已完成的仿真数与耗时。
"""
import json
import os
import time
from pathlib import Path

from core.utils import OUTPUT_BASE

PROGRESS_FILE = os.path.join(OUTPUT_BASE, ".progress.json")

_START_TIMES = {}


def _ensure_output():
    Path(OUTPUT_BASE).mkdir(parents=True, exist_ok=True)


def _write(data):
    _ensure_output()
    total_started = _START_TIMES.get("total")
    data["total_started_at"] = total_started
    if total_started:
        data["total_elapsed_sec"] = round(time.time() - total_started, 1)
    try:
        with open(PROGRESS_FILE, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=0)
    except Exception:
        pass


def start_total(total_runs):
    """记录总开始时间."""
    _START_TIMES["total"] = time.time()
    write_progress(0, total_runs, [])


def write_progress(done_runs, total_runs, completed_runs=None, events=None):
    """
    写入当前进度。completed_runs: [{"seed": 3, "status": "formed", "events": 812}, ...]
    events: 单次运行时当前已处理的事件数
    """
    label = f"仿真 {done_runs}/{total_runs}"
    if events is not None:
        label += f"，已处理 {events} 个事件"
    _write({
        "current_stage": "running",
        "current_stage_label": label,
        "done_runs": done_runs,
        "total_runs": total_runs,
        "completed_runs": completed_runs or [],
        "events": events,
        "status": "running",
    })


def write_progress_done(completed_runs):
    """写入完成状态."""
    _write({
        "current_stage": "done",
        "current_stage_label": "全部完成",
        "done_runs": len(completed_runs),
        "total_runs": len(completed_runs),
        "completed_runs": completed_runs,
        "status": "done",
    })


def write_progress_error(completed_runs, message):
    """写入错误状态."""
    _write({
        "current_stage": "error",
        "current_stage_label": message,
        "done_runs": len(completed_runs or []),
        "completed_runs": completed_runs or [],
        "status": "error",
    })
