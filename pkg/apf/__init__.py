"""
图案形成算法模块
全部为纯函数：LocalView -> Action
"""
from .actions import NULL_ACTION, Action, LambdaString
from .dispatch import decide, dispatch, two_axis_step
from .phase1 import become_leader, compute_destination, leftmost_terminal, phase1_step
from .phase2 import (
    IncompleteViewError,
    Phase2Frame,
    compute_destination2,
    lambda_strings,
    phase2_frame,
    phase2_step,
)
from .stage2 import AgreedFrame, agreed_frame, partial_formation, psi_targets, stage2_step

__all__ = [
    "NULL_ACTION",
    "Action",
    "LambdaString",
    "decide",
    "dispatch",
    "two_axis_step",
    "become_leader",
    "compute_destination",
    "leftmost_terminal",
    "phase1_step",
    "IncompleteViewError",
    "Phase2Frame",
    "compute_destination2",
    "lambda_strings",
    "phase2_frame",
    "phase2_step",
    "AgreedFrame",
    "agreed_frame",
    "partial_formation",
    "psi_targets",
    "stage2_step",
]
