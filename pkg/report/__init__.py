"""
结果输出模块
包含轨迹 JSONL、批量 CSV 和控制台摘要
"""
from .summary_formatter import format_outcome_summary
from .trace_saver import (
    TraceFileError,
    batch_row,
    first_leader_event,
    initial_world,
    load_trace_jsonl,
    replay_worlds,
    save_batch_csv,
    save_trace_jsonl,
)

__all__ = [
    'format_outcome_summary',
    'TraceFileError',
    'batch_row',
    'first_leader_event',
    'initial_world',
    'load_trace_jsonl',
    'replay_worlds',
    'save_batch_csv',
    'save_trace_jsonl',
]
