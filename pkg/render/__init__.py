"""
渲染模块
把轨迹文件采样输出为 SVG 帧
"""
from .svg_renderer import LIGHT_FILL, decimal_str, pattern_markers, render_frame, render_trace

__all__ = [
    'LIGHT_FILL',
    'decimal_str',
    'pattern_markers',
    'render_frame',
    'render_trace',
]
