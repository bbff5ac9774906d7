"""
工具函数模块
包含配置加载、线程安全打印、output 目录规则与最新轨迹查找等通用功能
"""
import os
import json
import threading
from fractions import Fraction
from pathlib import Path

from .geometry import parse_rational

# 支持 Web 多任务：环境变量 APF_JOB_ID 存在时，输出到 output/<job_id>/，否则 output/
_job_id = os.environ.get("APF_JOB_ID", "")
OUTPUT_BASE = os.path.join("output", _job_id) if _job_id else "output"

TRACE_SUFFIX = ".jsonl"

# 线程锁用于打印
print_lock = threading.Lock()

DEFAULT_CONFIG = {
    "max_phase_delay": "1",
    "fairness_window": None,
    "max_events": 100000,
    "batch_workers": 4,
    "svg_size": 480,
}


def safe_print(*args, **kwargs):
    """线程安全的打印函数，默认 flush 以便子进程输出实时进入管道（如 Web 运行日志）。
    自动处理 Windows GBK 编码问题，将 Unicode 特殊字符替换为 ASCII 兼容字符。
    """
    with print_lock:
        kwargs.setdefault("flush", True)
        try:
            print(*args, **kwargs)
        except UnicodeEncodeError:
            safe_args = []
            for arg in args:
                if isinstance(arg, str):
                    safe_args.append(arg.replace("✓", "[完成]").replace("✗", "[失败]").replace("Φ", "PHI"))
                else:
                    safe_args.append(arg)
            print(*safe_args, **kwargs)


def load_config(config_path="config.json"):
    """
    从配置文件加载仿真参数；无 config.json 时使用默认值。
    环境变量 APF_MAX_PHASE_DELAY（有理数字符串）覆盖 max_phase_delay。
    返回的 max_phase_delay 已解析为 Fraction。
    """
    config = dict(DEFAULT_CONFIG)
    if os.path.exists(config_path):
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValueError(f"{config_path} 顶层必须是 JSON 对象")
        for key in DEFAULT_CONFIG:
            if key in data:
                config[key] = data[key]

    runtime_delay = (os.environ.get("APF_MAX_PHASE_DELAY") or "").strip()
    if runtime_delay:
        config["max_phase_delay"] = runtime_delay
    try:
        delay = parse_rational(str(config["max_phase_delay"]))
    except ValueError as e:
        raise ValueError(f"max_phase_delay 配置无效：{e}") from e
    if delay <= 0:
        raise ValueError("max_phase_delay 必须为正")
    config["max_phase_delay"] = Fraction(delay)

    for key in ("max_events", "batch_workers", "svg_size"):
        if not isinstance(config[key], int) or config[key] < 1:
            raise ValueError(f"{key} 必须是正整数：{config[key]!r}")
    window = config.get("fairness_window")
    if window is not None and (not isinstance(window, int) or window < 1):
        raise ValueError(f"fairness_window 必须是正整数：{window!r}")
    return config


def get_output_subdir(kind="runs"):
    """返回本次输出目录（相对项目根）：output/[<job_id>/]<kind>。"""
    return os.path.join(OUTPUT_BASE, kind)


def find_latest_trace(base_dir=None):
    """
    查找 output 下最新的轨迹文件（*.jsonl，按修改时间）。
    返回 Path 或 None。
    """
    base = Path(base_dir or OUTPUT_BASE)
    if not base.exists():
        return None
    candidates = [p for p in base.rglob(f"*{TRACE_SUFFIX}") if p.is_file()]
    if not candidates:
        return None
    return max(candidates, key=lambda p: p.stat().st_mtime)


def list_output_files(base_dir=None):
    """
    列出 output 下的全部文件，返回 [(文件名, 相对 base_dir 的路径), ...]，用于下载等。
    """
    base = Path(base_dir or OUTPUT_BASE)
    if not base.is_dir():
        return []
    out = []
    for f in sorted(base.rglob("*")):
        if f.is_file() and not f.name.startswith("."):
            rel_str = str(f.relative_to(base)).replace("\\", "/")
            out.append((f.name, rel_str))
    return out
