#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
把轨迹渲染为 SVG 帧
不指定路径时自动查找 output 下最新的 *.jsonl；帧输出到轨迹同目录下的 <轨迹名>_frames/。
"""
import os
import sys
from pathlib import Path

# 保证从项目根目录可导入 core、render，且工作目录为项目根
_script_dir = Path(__file__).resolve().parent
_project_root = _script_dir.parent
if str(_project_root) not in sys.path:
    sys.path.insert(0, str(_project_root))
try:
    os.chdir(_project_root)
except Exception:
    pass

from core.utils import find_latest_trace, load_config
from render import render_trace


def _default_out_dir(trace_path):
    p = Path(trace_path)
    return str(p.parent / f"{p.stem}_frames")


def main():
    import argparse
    parser = argparse.ArgumentParser(description="把仿真轨迹渲染为 SVG 帧")
    parser.add_argument("--trace", "-t", default=None, help="轨迹路径（默认自动查找最新 *.jsonl）")
    parser.add_argument("--out", "-o", default=None, help="输出目录（默认 <轨迹名>_frames/）")
    parser.add_argument("--every", "-e", type=int, default=1, help="每 N 个事件输出一帧")
    parser.add_argument("--observer", type=int, default=None, help="绘制该机器人的可见连线")
    args = parser.parse_args()

    resolved = args.trace
    if resolved:
        resolved = str(_project_root / resolved) if not Path(resolved).is_absolute() else resolved
    else:
        latest = find_latest_trace()
        resolved = str(latest) if latest else None

    if not resolved or not Path(resolved).exists():
        print("错误：未找到轨迹文件")
        return False

    out_dir = args.out or _default_out_dir(resolved)
    frames = render_trace(resolved, out_dir, args.every, args.observer, size=load_config()["svg_size"])
    if not frames:
        print(f"[警告] 轨迹为空，未输出任何帧: {resolved}")
    else:
        print(f"[SVG] 已输出 {len(frames)} 帧: {out_dir}")
    return True


if __name__ == "__main__":
    try:
        sys.exit(0 if main() else 1)
    except Exception as e:
        print(f"\n错误: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
