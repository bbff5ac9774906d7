"""
核心功能模块
包含精确几何、机器人模型、场景读写和工具函数
"""
from .geometry import (
    AxisAlignedSimilarity,
    RPoint,
    format_rational,
    horizontal_symmetry_axis,
    lex_compare,
    match_axis_aligned_similarity,
    parse_rational,
    strictly_between,
)
from .model import (
    Activity,
    Light,
    LocalFrame,
    LocalView,
    Mode,
    Pattern,
    RobotState,
    SimulationFault,
    WorldConfig,
    take_snapshot,
    to_global,
    to_local,
    visible_set,
    world_digest,
)
from .scenario import ScenarioError, dump_scenario, load_scenario, parse_scenario, witness_pattern
from .utils import OUTPUT_BASE, find_latest_trace, load_config, safe_print

__all__ = [
    "AxisAlignedSimilarity",
    "RPoint",
    "format_rational",
    "horizontal_symmetry_axis",
    "lex_compare",
    "match_axis_aligned_similarity",
    "parse_rational",
    "strictly_between",
    "Activity",
    "Light",
    "LocalFrame",
    "LocalView",
    "Mode",
    "Pattern",
    "RobotState",
    "SimulationFault",
    "WorldConfig",
    "take_snapshot",
    "to_global",
    "to_local",
    "visible_set",
    "world_digest",
    "ScenarioError",
    "dump_scenario",
    "load_scenario",
    "parse_scenario",
    "witness_pattern",
    "OUTPUT_BASE",
    "find_latest_trace",
    "load_config",
    "safe_print",
]
