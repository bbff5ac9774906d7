"""
判定模块
包含配置分类、可解性判定与图案完成判定
"""
from .classify import (
    ConfigClass,
    Solvability,
    UnstableWorldError,
    check_solvable,
    classify,
    pattern_formed,
)

__all__ = [
    "ConfigClass",
    "Solvability",
    "UnstableWorldError",
    "check_solvable",
    "classify",
    "pattern_formed",
]
